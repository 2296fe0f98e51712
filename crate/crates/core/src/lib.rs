//! Worm domains 𝒲_η ⊂ ℂ³: defining functions, Levi pseudoconvexity
//! certification of the profile families, weighted Bergman kernels on the
//! model strip, norm integrals and the Cauchy extension demo.

// `!(x > 0.0)` is used on purpose so NaN is rejected too; index loops mirror the matrix formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bergman;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod levi;
pub mod optimize;
pub mod profiles;
pub mod quadrature;

pub use error::{Error, Result};
pub use geometry::{Point3, C64};
