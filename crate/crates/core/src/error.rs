use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("instance has no source line")]
    MissingSource,

    #[error("{what}: graph has {n} vertices, limit is {limit}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("demand {k} outside admissible range [{lo}, {hi}]")]
    DemandOutOfRange { k: usize, lo: usize, hi: usize },
}
