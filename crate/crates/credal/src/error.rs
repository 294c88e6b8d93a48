use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed arguments: non-finite numbers, empty ranges, unparseable syntax.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A statistical precondition does not hold (duplicate values, degenerate
    /// generator, observations outside the model's support, ...).
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    /// Tied scores left a focal region empty or degenerate, so no density can
    /// be placed on it.
    #[error("tie pathology: {0}")]
    TiePathology(String),
    /// A region has infinite Lebesgue measure; finite truncation bounds are
    /// needed before a density can be defined.
    #[error("truncation required: {0}")]
    TruncationRequired(String),
    /// Two objects built from different samples, bounds, or sizes were combined.
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
