use thiserror::Error;

/// Errors produced by the rank pipeline and its supporting modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the zero form is not allowed here")]
    ZeroForm,
    #[error("{what} = {value} is out of range {range}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        range: String,
    },
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error("numeric failure: {0}")]
    NumericFailure(String),
    #[error("inconsistent weight system: residual {0:e}")]
    Inconsistent(f64),
    #[error("sampling failed after {attempts} attempts: {reason}")]
    SamplingFailure { attempts: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
