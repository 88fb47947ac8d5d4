//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {input:?} as a field element: {reason}")]
    BadScalar { input: String, reason: String },

    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("partition sizes must be positive")]
    EmptyPart,

    #[error("matrix is not block upper triangular for the given partition")]
    NotBlockUpper,

    #[error("matrix is not strictly block upper triangular for the given partition")]
    NotStrictBlockUpper,

    #[error("not a derivation: Leibniz rule fails on basis pair ({u}, {v})")]
    NotDerivation { u: String, v: String },

    #[error("{solver}: hypothesis fails on unit pair A = E[{a0},{a1}], B = E[{b0},{b1}]")]
    HypothesisViolated {
        solver: &'static str,
        a0: usize,
        a1: usize,
        b0: usize,
        b1: usize,
    },

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
