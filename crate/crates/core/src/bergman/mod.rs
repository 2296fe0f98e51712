//! Norm integrals of E_κz₂ʲz₃ᵏ, rotation-sector projections and the Cauchy
//! extension across 𝒲′_μ.

pub mod cauchy;
pub mod norm;
pub mod sector;

pub use cauchy::{
    cauchy_extend, in_extension_region, in_w_prime, nebenhulle_report, AnnulusContour, ExtensionRow,
    NebenhulleReport, WitnessRow, CLEARANCE, DEFAULT_CONTOUR_NODES, KAPPAS, LAURENT_PANEL,
};
pub use norm::{
    cos_power_integral, derivative_in_l2, norm_integral, norm_monte_carlo, radial_integral, McEstimate,
    NormIntegralSpec, NormValue,
};
pub use sector::{rotation_average, sector_project, DEFAULT_NODES};
