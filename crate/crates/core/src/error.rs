use thiserror::Error;

/// Errors raised by the numerical routines and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its documented range or a precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// An evaluation point fell outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method failed or a discretization lost definiteness.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
