use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into three groups that the command-line front end maps to
/// distinct exit codes: precondition violations, numeric guards and resource
/// caps.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input too large for exact arithmetic: {0}")]
    InputTooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not coprime to 3")]
    NotCoprimeToThree(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numeric guard failed: {0}")]
    NumericGuard(String),
    #[error("accuracy budget exceeded: {0}")]
    AccuracyBudget(String),
    #[error("zero finder failed: {0}")]
    ZeroFinder(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    /// Broad category used for exit-code mapping.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InputTooLarge(_)
            | Error::DivisionByZero
            | Error::NotCoprimeToThree(_)
            | Error::NotPrime(_)
            | Error::InvalidInput(_)
            | Error::Precondition(_)
            | Error::Parse(_) => ErrorKind::Precondition,
            Error::NumericGuard(_) | Error::AccuracyBudget(_) | Error::ZeroFinder(_) => ErrorKind::Numeric,
            Error::ResourceLimit(_) => ErrorKind::Resource,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Numeric,
    Resource,
}

pub type Result<T> = std::result::Result<T, Error>;
