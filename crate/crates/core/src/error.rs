use thiserror::Error;

/// Errors raised by the field, Boolean-function and construction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A size or range parameter (tower degree, table length) is out of bounds.
    #[error("size error: {0}")]
    Size(String),
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A trace term evaluated outside the field its trace operator expects.
    #[error("representation error: {0}")]
    Representation(String),
    /// Malformed textual input (hex, JSON).
    #[error("parse error: {0}")]
    Parse(String),
    /// A search that cannot fail did fail.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
