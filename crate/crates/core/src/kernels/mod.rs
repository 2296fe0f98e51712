//! Model-domain kernels: unwinding, strip weights, K_{ω₋₁,₋₁} and its
//! asymptotics, and the Fourier isometry checks.

pub mod kernel;
pub mod paley;
pub mod unwind;
pub mod weight;

pub use kernel::{
    asymptotic_d, integrand, kernel_asymptotic, kernel_quadrature, kernel_quadrature_d, kernel_quadrature_with,
    residue_contour, residue_formula, wound_asymptotic, wound_integrand_sides, wound_kernel, AsympConstants,
    KernelEval, KernelSettings, KernelSum, Quadrature, WALL_THRESHOLD,
};
pub use paley::{
    reproduce, restriction_density_check, spatial_norm_sq, spectral_norm_sq, DensityReport, DensityRow, Hat,
    SpectralProfile, StripGrid,
};
pub use unwind::{ell, eval_e, in_d_mu, unwind, wind};
pub use weight::{sinh_ratio, StripWeight};
