use thiserror::Error;

/// Errors raised by coefficient computations, dimension walks and I/O.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchoenbergError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation too small: need at least {needed}, got {got}")]
    TruncationTooSmall { needed: usize, got: usize },

    #[error("quadrature under-resolved: sum of |coefficients| = {abs_sum} exceeds 1 by more than {tolerance:e}")]
    UnderResolved { abs_sum: f64, tolerance: f64 },

    #[error("unverifiable input: {0}")]
    Unverifiable(String),

    #[error("inconclusive premise: {0}")]
    Inconclusive(String),

    #[error("contradictory evidence: {0}")]
    Contradiction(String),

    #[error("invalid field `{field}`: {reason}")]
    InvalidField { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, SchoenbergError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(SchoenbergError::Domain(msg.into()))
}
