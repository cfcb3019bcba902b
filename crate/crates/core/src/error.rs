use thiserror::Error;

/// Errors raised by the library. The CLI maps each class to its own exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit exceeded: {what} (bound {bound})")]
    Resource { what: String, bound: u64 },
    #[error("randomized certificate failed: {0}")]
    Certificate(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(what: impl Into<String>, bound: u64) -> Self {
        Error::Resource { what: what.into(), bound }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
