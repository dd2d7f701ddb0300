use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("{what}: input has {size} vertices, above the ceiling of {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        size: usize,
        ceiling: usize,
    },

    #[error("{radius}-neighbourhood of vertex {vertex} has {size} vertices, above the exact tree-width ceiling of {ceiling}")]
    NeighbourhoodCeiling {
        vertex: Vertex,
        radius: usize,
        size: usize,
        ceiling: usize,
    },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("bag with {size} vertices exceeds the dynamic-programming limit of {limit}")]
    WidthLimit { size: usize, limit: usize },

    #[error("adhesion {size} at node {node} exceeds the bound {bound}")]
    AdhesionOverBound {
        node: usize,
        size: usize,
        bound: usize,
    },

    #[error("apex set of node {node} has {size} vertices, more than mu = {mu}")]
    ApexOverBound { node: usize, size: usize, mu: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
