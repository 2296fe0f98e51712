//! Levi-form analysis of ∂𝒲_η.

pub mod certify;
pub mod forms;
pub mod hermitian;
pub mod selection;

pub use certify::{certify, edge_sweep_min, CertifySettings, PseudoconvexityReport, SampleRecord};
pub use forms::{
    decompose, fd_complex_hessian, hessian_matrices, ineq_values, logform_check, p_functional,
    restricted_levi, rho_tilde, Decomposition, IneqValues, LogForm, RestrictedLevi,
};
pub use selection::{select_constants, SelectionResult, SelectionSettings};
