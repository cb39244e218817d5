use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("degree and valuation are undefined for the zero polynomial")]
    UndefinedBounds,

    #[error("dense span {span} exceeds the limit of {limit} coefficients")]
    SpanLimit { span: BigUint, limit: usize },

    #[error("resource limit reached: {0}")]
    ResourceLimit(String),

    #[error("division is not exact")]
    InexactDivision,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for the errors caused by a resource guard rather than bad input or a bug.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::SpanLimit { .. } | Error::ResourceLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
