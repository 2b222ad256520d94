use thiserror::Error;

use crate::scalar::Cyclotomic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("conductor must be at least 1")]
    ZeroConductor,

    #[error("division by zero")]
    DivisionByZero,

    /// A rational function still has a vanishing denominator after cancellation.
    #[error("pole at u = {at}")]
    Pole { at: Cyclotomic },

    /// Consecutive evaluation hit a non-removable singularity.
    #[error("fusion step {step}: pole at u = {at}")]
    FusionPole { step: usize, at: Cyclotomic },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("malformed group file: {0}")]
    MalformedGroupFile(String),

    #[error("multiplication table is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),

    #[error("multiplication table has no identity element")]
    MissingIdentity,

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("character table validation failed: {0}")]
    CharacterTable(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("incompatible operands: {0}")]
    Mismatch(String),

    #[error("abelian generator mode requires an abelian group, got {0}")]
    NotAbelian(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("refusing job: estimated size {estimate} exceeds cap {cap}")]
    SizeCap { estimate: u128, cap: u128 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
