use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid diagram: {0}")]
    Invalid(String),

    #[error("size bound exceeded: {0}")]
    Bound(String),

    #[error("weight system constraint violated: {0}")]
    Constraint(String),

    #[error("move not applicable: {0}")]
    InvalidMove(String),

    #[error("row {row}: {source}")]
    Row {
        row: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("table format: {0}")]
    Table(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by malformed user input (as opposed to size
    /// bounds or I/O).
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Syntax { .. } | Error::Invalid(_) | Error::Constraint(_) | Error::Table(_) => {
                true
            }
            Error::Row { source, .. } => source.is_input_error(),
            _ => false,
        }
    }
}
