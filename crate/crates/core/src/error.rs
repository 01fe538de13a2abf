use std::path::PathBuf;

use crate::diag::Diagnostic;
use crate::tree::NodeRef;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed line in one of the text formats.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A parsed sentence breaks a structural invariant.
    #[error("sentence {sid}: {message}")]
    Invariant { sid: u32, message: String },

    #[error("unknown node {0}")]
    UnknownNode(NodeRef),

    #[error("binding resolves to an empty token span")]
    EmptyResolution,

    /// A reference from one layer into another does not resolve.
    #[error("dangling reference: {0}")]
    Dangling(String),

    #[error("duplicate {0}")]
    Duplicate(String),

    #[error("unknown tag `{tag}` ({vocab} vocabulary)")]
    UnknownTag { tag: String, vocab: &'static str },

    #[error("sentence pair {0} is not registered in this set")]
    PairNotRegistered(String),

    #[error("line count mismatch: {left} has {left_lines} lines, {right} has {right_lines}")]
    LineCountMismatch {
        left: String,
        left_lines: usize,
        right: String,
        right_lines: usize,
    },

    #[error("{path}: line {line} is empty")]
    EmptyLine { path: String, line: usize },

    #[error("set `{0}` is not declared in the manifest")]
    UnknownSet(String),

    #[error("refusing to overwrite existing file {}", .0.display())]
    WouldOverwrite(PathBuf),

    #[error(
        "strict load failed: {} error-severity diagnostic(s)",
        crate::diag::error_count(diagnostics)
    )]
    Strict { diagnostics: Vec<Diagnostic> },

    #[error("{}: {source}", path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invariant(sid: u32, message: impl Into<String>) -> Self {
        Error::Invariant {
            sid,
            message: message.into(),
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::InFile {
            path: path.into(),
            source: Box::new(self),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
