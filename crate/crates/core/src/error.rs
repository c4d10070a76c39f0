use alloc::string::String;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    Input(String),
    /// A configured size or budget cap was exceeded.
    #[error("limit exceeded: {0}")]
    Limits(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::Error::Input(alloc::format!($($arg)*)) };
}
macro_rules! limits_err {
    ($($arg:tt)*) => { $crate::Error::Limits(alloc::format!($($arg)*)) };
}
pub(crate) use input_err;
pub(crate) use limits_err;
