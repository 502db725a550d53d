use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("g_{k} takes exactly {k} arguments, got {got}")]
    ArgumentCount { k: usize, got: usize },

    /// An exact division that must succeed by theory did not. This is a bug,
    /// not a user error.
    #[error("internal error: {what} is not an integer ({value})")]
    NonIntegral { what: String, value: String },

    #[error("degree {0} is not a positive integer")]
    NonPositiveDegree(i64),

    #[error("{0} is outside the supported factorization range 1..=1000000")]
    FactorOutOfRange(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error("dimension {n} not supported here (expected {expected})")]
    Dimension { n: u32, expected: &'static str },

    #[error("profiles were computed for different dimensions ({0} and {1})")]
    DimensionMismatch(u32, u32),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("search table exceeded the configured cap of {limit} entries")]
    ResourceLimit { limit: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed corpus: {0}")]
    Corpus(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
