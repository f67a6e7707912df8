use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different polynomial rings")]
    RingMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("exponent vectors have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("inhomogeneous generator {0}")]
    Inhomogeneous(String),
    #[error("empty ideal: no generators")]
    EmptyGenerators,
    #[error("zero ideal")]
    ZeroIdeal,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("resolution is not minimal: differential {0} has a unit entry")]
    NonMinimal(usize),
    #[error("support is not equidimensional")]
    NotEquidimensional,
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("degree {degree} is below the generation degree {required}")]
    BelowGenerationDegree { degree: i64, required: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
