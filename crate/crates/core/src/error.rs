use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the operation's domain (zero, negative, empty, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("the root 1/1 has no parent")]
    RootHasNoParent,

    #[error("continued fraction {0} is not in canonical form")]
    NonCanonical(String),

    /// The caller supplied a value that does not belong to the given fraction.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// A derived structure failed its own verification. Indicates a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("value too large: {0}")]
    TooLarge(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Self::Domain(msg.into())
    }
}
