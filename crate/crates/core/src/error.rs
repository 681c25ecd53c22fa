use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("unknown generator: {0}")]
    UnknownGenerator(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing parameter: {0}")]
    MissingParameter(String),
    #[error("operator is not saturated; remainder {0}")]
    NotSaturated(String),
    #[error("no singular vector (nullspace is zero)")]
    NoSingularVector,
    #[error("parameter degeneracy: nullspace has dimension {0}")]
    Degenerate(usize),
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
