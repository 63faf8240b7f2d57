use std::io;
use std::path::PathBuf;

use ht_core::ParseError;

/// A malformed line in one of the text formats. Line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FormatError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Lifts a formula parse error found in text starting at `offset`
    /// (0-based character offset within the line).
    pub fn from_parse(line: usize, offset: usize, e: &ParseError) -> Self {
        FormatError::new(line, offset + e.column, e.kind.to_string())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{source}", path.display())]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
}

impl LoadError {
    pub fn format(path: impl Into<PathBuf>, source: FormatError) -> Self {
        LoadError::Format {
            path: path.into(),
            source,
        }
    }
}

pub(crate) fn read(path: &std::path::Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })
}
