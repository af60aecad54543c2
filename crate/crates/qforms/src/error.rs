use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at s = {0}")]
    Pole(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("element is not homogeneous with respect to index {0}")]
    Inhomogeneous(i32),
    #[error("element is not invariant")]
    NotInvariant,
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error("arity or degree mismatch: {0}")]
    Mismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
