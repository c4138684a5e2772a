use thiserror::Error;

/// Errors raised by the laboratory.
///
/// The variants map onto the command-line exit codes: configuration and
/// domain errors are usage problems, capacity errors mean the request does
/// not fit the memory or enumeration budget.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("capacity error: {0}")]
    Capacity(String),
    #[error("lookup error: {0}")]
    Lookup(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("set error: {0}")]
    Set(String),
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// True for errors caused by resource limits rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
