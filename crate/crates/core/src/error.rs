use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed braid text. `position` is the 1-based index of the offending entry.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// Input outside the domain of an operation (non-knot closure, negative argument, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured work or size limit was exceeded.
    #[error("resource limit exceeded: {what} (limit {limit}, reached {reached}); {hint}")]
    Resource {
        what: String,
        limit: u64,
        reached: u64,
        hint: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
