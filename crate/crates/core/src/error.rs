use thiserror::Error;

/// Errors produced while building, compiling, solving or decoding models.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("spin {index} has value {value}; spins must be -1 or +1")]
    InvalidSpin { index: usize, value: i8 },

    #[error("bit {index} has value {value}; bits must be 0 or 1")]
    InvalidBit { index: usize, value: u8 },

    #[error("variable index {index} out of range for a model with {num_vars} variables")]
    VarOutOfRange { index: usize, num_vars: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` is declared more than once")]
    DuplicateVariable(String),

    #[error("variable `{name}` has lower bound {lower} above upper bound {upper}")]
    InvalidBounds { name: String, lower: i64, upper: i64 },

    #[error("variable `{0}` is unbounded; every integer variable needs both bounds")]
    Unbounded(String),

    #[error("constraint `{name}` is infeasible: {reason}")]
    Infeasible { name: String, reason: String },

    #[error("constraint `{name}` is invalid: {reason}")]
    InvalidConstraint { name: String, reason: String },

    #[error("penalty must be positive and finite, got {0}")]
    InvalidPenalty(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("model has {num_vars} variables, above the enumeration limit of {limit}")]
    SizeLimit { num_vars: usize, limit: usize },

    #[error("invalid sampler parameters: {0}")]
    InvalidParams(String),

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
