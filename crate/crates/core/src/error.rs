use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("profile has no boundary points in the sampling window")]
    EmptyBoundary,
    #[error("point is not on the boundary (|rho| = {rho:e})")]
    NotOnBoundary { rho: f64 },
    #[error("degenerate tangent frame: eta'_2 = eta'_3 = 0 at a point with z1 = e^(iL)")]
    DegenerateFrame,
    #[error("profile is not C^2 at (t2, t3) = ({t2}, {t3})")]
    NonSmoothPoint { t2: f64, t3: f64 },
    #[error("point ({t2}, {t3}) lies outside the support of the log-profile")]
    OutsideSupport { t2: f64, t3: f64 },
    #[error("grid too coarse: refinement moved {which} by {rel_change:.3e} (relative)")]
    GridTooCoarse { which: String, rel_change: f64 },
    #[error("z1 e^(-iL) lies on the branch cut (-inf, 0]")]
    BranchViolation,
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),
    #[error("Re d = 0: asymptotic expansion is undefined on the wall")]
    OnWall,
    #[error("point is within {clearance:.3e} of a contour of radius {radius:.3e}")]
    TooCloseToContour { clearance: f64, radius: f64 },
    #[error("identity check failed: {0}")]
    IdentityViolation(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
