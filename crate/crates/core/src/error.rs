use thiserror::Error;

/// Errors raised by matrix construction, parsing and the checkers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed matrix, graph or signature text. `line` and `column` are
    /// 1-based; `column` is the token position within the line.
    #[error("parse error at line {line}{}: {message}", column.map(|c| format!(", token {c}")).unwrap_or_default())]
    Parse {
        line: usize,
        column: Option<usize>,
        message: String,
    },

    #[error("index out of bounds: {0}")]
    Bounds(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// A condensation step would divide by zero at the given 1-based position.
    #[error("zero divisor at ({row}, {col})")]
    DivisorZero { row: usize, col: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// The bordering constructor found no admissible value for an entry.
    #[error("candidate ladder exhausted while filling entry ({row}, {col}) of a {rows}x{cols} matrix")]
    CandidateExhausted {
        rows: usize,
        cols: usize,
        row: usize,
        col: usize,
    },

    /// A generated matrix failed its own certification check.
    #[error("certification failed: {0}")]
    Certification(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
