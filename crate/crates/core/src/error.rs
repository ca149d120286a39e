use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated the precondition of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed text input; `position` is a 1-based token or character index.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    /// The request is well-formed but beyond the sizes this toolkit computes.
    #[error("{operation} supports n <= {bound}, got n = {got}")]
    Capability {
        operation: &'static str,
        bound: usize,
        got: usize,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(position: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
