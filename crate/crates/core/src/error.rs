use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T> = std::result::Result<T, LinkDecayError>;

#[derive(Debug, Error)]
pub enum LinkDecayError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on node `{node}`")]
    SelfLoop { line: usize, node: String },

    #[error("line {line}: delete of absent edge ({src}, {dst})")]
    AbsentDelete {
        line: usize,
        src: String,
        dst: String,
    },

    #[error("node {node} out of range for graph with {n} nodes")]
    UnknownNode { node: NodeId, n: usize },

    #[error("pair ({0}, {0}) is not a valid node pair: endpoints must differ")]
    SamePair(NodeId),

    #[error("pair #{index}: {source}")]
    BatchItem {
        index: usize,
        #[source]
        source: Box<LinkDecayError>,
    },

    #[error(
        "complement of a graph with {n} nodes has up to {dense} edges and is far from sparse; \
         limit is {limit} nodes"
    )]
    ComplementTooLarge { n: usize, limit: usize, dense: u128 },

    #[error("no decayed edges in window")]
    NoDecayedEdges,

    #[error("no new edges in window")]
    NoNewEdges,

    #[error("ranking contains no test-labeled items")]
    NoPositives,

    #[error("empty event list")]
    EmptyEvents,

    #[error("need at least 2 uncensored lifetimes with positive total exposure, got {0}")]
    InsufficientLifetimes(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
