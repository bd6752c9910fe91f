use thiserror::Error;

/// Errors raised by the library.
///
/// `Infeasible` is kept separate from input errors because several callers
/// (the harness, the CLI exit codes) treat "no admissible cut exists" as a
/// legitimate answer rather than a failure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Short machine-readable tag, used by the CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Parse(_) => "parse",
            Error::Infeasible(_) => "infeasible",
            Error::TooLarge(_) => "too_large",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
