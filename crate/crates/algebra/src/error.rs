use thiserror::Error;

/// Errors raised by the algebra substrate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operation requires an exact scalar domain")]
    DomainNotExact,
    #[error("factorization incomplete: {0}")]
    FactorizationIncomplete(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid scalar domain: {0}")]
    InvalidDomain(String),
    #[error("unsupported for this scalar domain: {0}")]
    Unsupported(String),
    #[error("numerical routine did not converge: {0}")]
    NoConvergence(String),
    #[error("matrix is not Hermitian")]
    NotHermitian,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse scalar {input:?}: {reason}")]
pub struct ScalarParseError {
    pub input: String,
    pub reason: String,
}

impl ScalarParseError {
    pub(crate) fn new(input: &str, reason: impl Into<String>) -> Self {
        ScalarParseError {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
