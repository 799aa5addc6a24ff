use thiserror::Error;

use crate::field::FieldSpec;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid field descriptor: {0}")]
    InvalidField(String),

    #[error("modulus {0} is not a prime below 2^63")]
    NotPrime(u64),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldSpec, right: FieldSpec },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("element is not invertible")]
    NotInvertible,

    #[error("operation requires {required}, got {found}")]
    UnsupportedField {
        required: &'static str,
        found: FieldSpec,
    },

    #[error("matrix is not regular (diagonal must be all ones)")]
    NotRegular,

    #[error("search guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("no recurrence within {0} iterations")]
    IterationLimit(u64),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid coding: {0}")]
    InvalidCoding(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
