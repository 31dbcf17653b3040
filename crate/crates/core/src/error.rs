use thiserror::Error;

/// Errors raised by the construction and its diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The point is the origin, where jets are not evaluated numerically.
    #[error("origin excluded: the map and its coefficients are only evaluated for z != 0")]
    Origin,
    /// A configuration value is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
