//! Crate-wide error type.

use crate::graph::{EdgeId, VertexId};

/// Errors reported by toolkit operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A vertex id was not present in the graph.
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    /// An edge id was not present in the graph.
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    /// Malformed textual input. `offset` is the byte position in the record.
    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
    /// A bundled data file is missing or fails its validation predicate.
    #[error("fixture unavailable: {0}")]
    FixtureUnavailable(String),
    /// An operation was called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The input is larger than the documented exact-search bound.
    #[error("exact search bound exceeded: {0}")]
    BoundExceeded(String),
    /// A witness or certificate failed independent replay.
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    /// Wrapped I/O failure, annotated with the path involved.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse { offset, msg: msg.into() }
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
