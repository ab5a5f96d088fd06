use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (bad generators, wrong model, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Elements or graphs from two different models were combined.
    #[error("model mismatch: {0}")]
    ModelMismatch(String),

    /// A configured size limit was hit.
    #[error("resource limit exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: usize },

    /// A search ran out of budget; carries the best bound established so far.
    #[error("search bound exceeded: {what} (established lower bound {lower_bound})")]
    BoundExceeded { what: String, lower_bound: u64 },

    /// A structural check on a produced object failed.
    #[error("verification failed: {0}")]
    Verification(String),

    /// An internal invariant broke. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn resource(what: impl Into<String>, cap: usize) -> Error {
    Error::Resource {
        what: what.into(),
        cap,
    }
}
