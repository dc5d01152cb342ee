use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid discretization: {0}")]
    InvalidDiscretization(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported domain for {function}: {detail}")]
    UnsupportedDomain { function: &'static str, detail: String },

    #[error("singular argument: {0}")]
    SingularArgument(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("near resonance at order p={order}, k={k}: |det| = {det:e} relative to scale {scale:e}")]
    NearResonance { order: i64, k: String, det: f64, scale: f64 },

    #[error("wrong solver: {0}")]
    WrongSolver(String),

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("probe count ell={ell} too small: numerical rank reached {rank}")]
    EllTooSmall { ell: usize, rank: usize },

    #[error("singular matrix: {0}")]
    SingularMatrix(String),

    #[error("failed to converge: {0}")]
    NoConvergence(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
