use thiserror::Error;

/// Errors raised by the library.
///
/// `Invalid*` variants are caller mistakes (bad parameters). `Check` and
/// `Arithmetic` signal that an exactness or consistency invariant failed,
/// which always points at a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {value} exceeds the desk-scale cap {cap}; pass an explicit override to go further")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("consistency check failed: {0}")]
    Check(String),

    #[error("inexact arithmetic: {0}")]
    Arithmetic(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn check(msg: impl Into<String>) -> Self {
        Error::Check(msg.into())
    }

    /// True for errors caused by bad input rather than failed math.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
