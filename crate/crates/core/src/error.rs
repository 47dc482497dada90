use thiserror::Error;

pub type Result<T> = std::result::Result<T, JordanError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JordanError {
    #[error("{0} is not a supported prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    /// The brute-force oracle was asked for an algebra larger than its ceiling.
    #[error("algebra dimension {dimension} exceeds the oracle ceiling {ceiling}")]
    ResourceLimit { dimension: u64, ceiling: u64 },

    /// A requested engine cannot produce an answer for these parameters.
    #[error("method not applicable: {0}")]
    Inapplicable(String),

    /// A result failed a structural invariant that the theory guarantees.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl JordanError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        JordanError::InvalidArgument(msg.into())
    }
}
