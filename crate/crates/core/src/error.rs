use thiserror::Error;

#[derive(Debug, Error)]
pub enum CycError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("digraph needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("matrix is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("vertex {0} is unreachable from the chosen root")]
    NotStronglyConnected(usize),
    #[error("zero element has no leading term")]
    ZeroElement,
    #[error("grading weights do not fit in 64 bits")]
    GradingTooLarge,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CycError>;
