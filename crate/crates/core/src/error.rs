use thiserror::Error;

/// Errors raised by the combinatorial and geometric routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A value is structurally malformed (bad arrow, bad order, bad word, ...).
    #[error("validation error: {0}")]
    Validation(String),
    /// An internal invariant does not hold for the given input.
    #[error("invariant violation: {0}")]
    Invariant(String),
    /// The request exceeds an exhaustive-computation gate.
    #[error("unsupported scale: {what} requires n <= {limit}, got n = {n}")]
    UnsupportedScale {
        what: &'static str,
        n: u32,
        limit: u32,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}
