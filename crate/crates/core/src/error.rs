use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("singular matrix (pivot {pivot:e} below threshold {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("body has empty interior (best inscribed radius {radius:e})")]
    EmptyInterior { radius: f64 },

    #[error("body is unbounded")]
    Unbounded,

    #[error("body is empty")]
    Infeasible,

    #[error("operation not available for this body: {0}")]
    NotLocated(&'static str),

    #[error("sandwich contract violated: {0}")]
    ContractViolation(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("point is not inside the ball: offset {offset:e} >= radius {radius:e}")]
    OutOfBall { offset: f64, radius: f64 },

    #[error("grid too large: {points} points (limit {limit})")]
    GridTooLarge { points: u128, limit: u128 },

    #[error("grid holds no metric-complement samples")]
    EmptyComplementSample,

    #[error("certificate rejected: radius {radius:e} exceeds verified margin {margin:e}")]
    CertificateRejected { radius: f64, margin: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape file: {0}")]
    Shape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
