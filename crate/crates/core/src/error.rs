use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("algebra is not connected: {0}")]
    NotConnected(String),
    #[error("algebra is not graded commutative ({0}); use the shc pipeline")]
    NotCommutative(String),
    #[error("truncation too small: {0}; increase the maximal degree")]
    Truncation(String),
    #[error("no solution: {0}")]
    Unsolvable(String),
    #[error("inconsistent linear part of mu: {0}")]
    InconsistentMu(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
