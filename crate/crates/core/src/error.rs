use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A caller broke an operation's precondition (length mismatch, incomplete trace, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A gadget or reduction could not be built from the given parameters.
    #[error("construction error: {0}")]
    Construction(String),

    /// An input exceeds a hard cap (oracle sizes, node counts).
    #[error("refused: {0}")]
    Refused(String),

    /// Malformed text input, with a 1-based line and column.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
