use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{e} exceeds the supported limit of 2^20")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(u32),
    #[error("element {0} is not invertible")]
    NotInvertible(u64),
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
