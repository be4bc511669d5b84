use qf_algebra::AlgebraError;
use thiserror::Error;

/// Errors raised by the quiver, canonical-form, path-algebra and doubling layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("representations live on different graphs")]
    GraphMismatch,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("eigenvalue not representable in the exact domain: {0} (use the complex-float domain)")]
    EigenvalueNotRepresentable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("wild type: indecomposable dimension vectors are only enumerated for finite and tame types")]
    WildTypeUnsupported,
    #[error("a product needs paths longer than the length bound {0}")]
    LengthBoundExceeded(usize),
    #[error("the generators do not generate the algebra (closure has dimension {closure} of {dim})")]
    GeneratorsInsufficient { closure: usize, dim: usize },
    #[error("paths of length at most {0} do not span the algebra; raise the bound")]
    BoundTooSmall(usize),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("the four scalars must be pairwise distinct")]
    ScalarsNotDistinct,
}

impl CoreError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CoreError::Invalid(msg.into())
    }

    /// True for errors caused by malformed input text.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, CoreError::Parse { .. })
    }
}

impl From<serde_json::Error> for CoreError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the message part
        let message = match message.rfind(" at line ") {
            Some(k) => message[..k].to_string(),
            None => message,
        };
        CoreError::Parse { line: e.line(), column: e.column(), message }
    }
}
