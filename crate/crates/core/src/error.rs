use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a square class")]
    ZeroInput,

    #[error("cannot factor {value}: cofactor has no prime factor below the trial-division bound {bound}")]
    FactorBoundExceeded { value: String, bound: u64 },

    #[error("matrix is not square or not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("quadratic form must have at least one entry")]
    EmptyForm,

    #[error("dimension {dim} is invalid here: {reason}")]
    BadDimension { dim: usize, reason: &'static str },

    #[error("Pfister rank {0} exceeds 3")]
    RankTooLarge(usize),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("coordinate vector has length {got}, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("{0} is not represented by the given form")]
    NotRepresented(String),

    #[error("element is not hermitian for this algebra")]
    NotHermitian,

    #[error("invalid Jordan algebra data: {0}")]
    InvalidJordan(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
