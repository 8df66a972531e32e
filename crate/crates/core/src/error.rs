use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("numeric error: {message} (last estimate {partial})")]
    Numeric { message: String, partial: Complex64 },
    #[error("degenerate lattice: {0}")]
    Degenerate(String),
    #[error("order of limits: {0}")]
    OrderOfLimits(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn size(msg: impl Into<String>) -> Self {
        Error::Size(msg.into())
    }

    pub fn numeric(msg: impl Into<String>, partial: Complex64) -> Self {
        Error::Numeric {
            message: msg.into(),
            partial,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
