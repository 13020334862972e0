use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid anyon count {0}: expected an even number >= 4")]
    InvalidAnyonCount(usize),

    #[error("generator index {index} out of range 1..={max}")]
    GeneratorOutOfRange { index: i64, max: usize },

    #[error("element limit {limit} exceeded ({count} elements found so far)")]
    LimitExceeded { limit: usize, count: usize },

    #[error("no identity power found up to bound {0}")]
    OrderBoundExceeded(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed matrix data: {0}")]
    Malformed(String),

    #[error("points {0} and {1} are closer than the minimum separation")]
    CoincidentPoints(String, String),

    #[error("ambiguous branch for {quantity} at step {step}; increase the step count")]
    BranchAmbiguity { quantity: &'static str, step: usize },

    #[error("branch state inconsistent for {quantity} (deviation {deviation:e})")]
    BranchInconsistency {
        quantity: &'static str,
        deviation: f64,
    },
}
