use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node id {id} exceeds the configured maximum {max}")]
    Capacity { id: u64, max: u64 },

    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("neighbor index {index} out of range for node {node} of degree {degree}")]
    NeighborOutOfRange {
        node: usize,
        index: usize,
        degree: usize,
    },

    #[error("sample index {index} out of range for random source of length {len}")]
    SampleOutOfRange { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("malformed graph: {0}")]
    Malformed(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
