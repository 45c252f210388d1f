use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A word length does not fit in the integer type.
    #[error("length of f_{n}^[{i}] overflows u64")]
    Overflow { i: u64, n: u64 },

    /// A word is representable but too large to materialize.
    #[error("f_{n}^[{i}] has {len} symbols, above the capacity of {cap}")]
    Capacity { i: u64, n: u64, len: u64, cap: u64 },

    /// A combinatorial property that should hold does not.
    #[error("structure violation: {0}")]
    Structure(String),

    /// Landmarks or shapes are degenerate (for example collinear).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A sub-curve is not a similar copy of its template.
    #[error("self-similarity violation: {0}")]
    SelfSimilarity(String),

    /// The requested limit does not exist (for example the aspect at α = 0).
    #[error("divergent: {0}")]
    Divergent(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
