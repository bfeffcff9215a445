use thiserror::Error;

/// Errors raised by the decision-model toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("dimension mismatch: expected {expected} states, found {found}")]
    Dimension { expected: usize, found: usize },
    /// A size cap (state count, enumeration budget) was exceeded.
    #[error("size limit exceeded: {0}")]
    Size(String),
    /// A model was assembled from parts that do not fit together.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    /// A numerical routine failed in a way that valid inputs should not allow.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
