use thiserror::Error;

/// Errors raised by the library. Each variant corresponds to one failure kind
/// that callers (and the CLI) can match on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ground field: {0}")]
    InvalidGround(String),

    #[error("invalid ground element: {0}")]
    InvalidElement(String),

    #[error("ground field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid expansion base: {0}")]
    InvalidBase(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("inadmissible construction: {0}")]
    Inadmissible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("descriptor variant mismatch: {0}")]
    VariantMismatch(String),

    #[error("step index {index} out of range for chain of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("epsilon is undefined for constant polynomials")]
    UndefinedEpsilon,

    #[error("the set Psi is empty: truncation at step {0} agrees with the chain on every later key")]
    PsiEmpty(usize),

    #[error("the zero polynomial has no initial form")]
    NoInitialForm,

    #[error("value did not stabilize within the family prefix (prefix too short): {0}")]
    NotStabilized(String),

    #[error("invalid descriptor document: {0}")]
    Descriptor(String),
}

impl Error {
    /// Short machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidGround(_) => "InvalidGround",
            Error::InvalidElement(_) => "InvalidElement",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::InvalidBase(_) => "InvalidBase",
            Error::Parse { .. } => "Parse",
            Error::Inadmissible(_) => "Inadmissible",
            Error::Precondition(_) => "Precondition",
            Error::VariantMismatch(_) => "VariantMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::UndefinedEpsilon => "UndefinedEpsilon",
            Error::PsiEmpty(_) => "PsiEmpty",
            Error::NoInitialForm => "NoInitialForm",
            Error::NotStabilized(_) => "NotStabilized",
            Error::Descriptor(_) => "Descriptor",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
