use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("resource cap exceeded: {what} needs {required} entries, cap is {cap}")]
    ResourceCap { what: String, required: u128, cap: u128 },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("element is not central")]
    NotCentral,
    #[error("{what} disagree in degree {degree} at column {column}")]
    InternalMismatch { what: String, degree: usize, column: usize },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
