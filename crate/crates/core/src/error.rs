use thiserror::Error;

/// Errors reported by the distance, morphing and simplification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("curve has no vertices")]
    EmptyCurve,
    #[error("curve is degenerate (a single point)")]
    DegenerateCurve,
    #[error("value {value} outside [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },
    #[error("target not reachable from start")]
    NotReachable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("morphing domains do not match: {0}")]
    DomainMismatch(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("morphing segment {0} spans more than one cell")]
    NotWellBehaved(usize),
    #[error("negative radicand {0}")]
    NegativeRadicand(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
