use thiserror::Error;

/// Errors raised by the library.
///
/// Verification failures are not errors: they are reported as check content.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
