use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("series constant term must be zero")]
    NonZeroConstant,
    #[error("series constant term is not a unit")]
    NonUnitConstant,
    #[error("series orders or variables do not match")]
    SeriesMismatch,
    #[error("enumeration cap exceeded: n = {n} > cap = {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("character has nonzero rank {0}")]
    NonZeroRank(i64),
    #[error("character has a constant (fixed) term")]
    ConstantTerm,
    #[error("non-generic evaluation point: {0}")]
    NonGenericPoint(String),
    #[error("weight {0} evaluates to zero at the linear point")]
    ZeroWeightValue(String),
    #[error("weight {0} has a half-integer exponent")]
    HalfExponent(String),
    #[error("plethystic family is not convergent at level {0}")]
    NonConvergent(usize),
    #[error("no generic point found after {0} attempts")]
    ResampleExhausted(usize),
    #[error("expected an integer, got {0}")]
    NonIntegral(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
