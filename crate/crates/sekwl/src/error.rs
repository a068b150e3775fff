use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text input (edge lists).
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    /// Malformed binary/encoded input (graph6 records).
    #[error("format error in record {record}: {reason}")]
    Format { record: usize, reason: String },

    /// Input outside an operation's mathematical domain.
    #[error("{0}")]
    Domain(String),

    /// Valid request beyond what this implementation supports.
    #[error("{0}")]
    Capability(String),

    /// Caller broke an API contract (mismatched widths, missing data).
    #[error("{0}")]
    Contract(String),

    /// Unparseable spec/flag strings; the CLI maps these to exit code 2.
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }

    pub fn format(record: usize, reason: impl Into<String>) -> Self {
        Error::Format {
            record,
            reason: reason.into(),
        }
    }
}
