use thiserror::Error;

use crate::graph::RootedTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("instance too large: n = {n} exceeds limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph has fewer than 3 vertices")]
    TooSmall,
    #[error("graph is not a tree")]
    NotATree,
    #[error("drawing graph is disconnected; spanning ratio undefined")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Short stable name, used by the CLI in messages.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InstanceTooLarge { .. } => "InstanceTooLarge",
            Error::NotConnected => "NotConnected",
            Error::NotPlanar => "NotPlanar",
            Error::TooSmall => "TooSmall",
            Error::NotATree => "NotATree",
            Error::Disconnected => "Disconnected",
            Error::NoEdges => "NoEdges",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Local search stalled above the requested degree. The tree is still a
/// valid spanning tree, so callers can keep it.
#[derive(Debug, Clone, Error)]
#[error("degree target {target} missed: achieved maximum degree {achieved}")]
pub struct DegreeTargetMissed {
    pub achieved: usize,
    pub target: usize,
    pub tree: RootedTree,
}

#[derive(Debug, Clone, Error)]
pub enum SpanningTreeError {
    #[error(transparent)]
    Graph(#[from] Error),
    #[error(transparent)]
    Missed(#[from] DegreeTargetMissed),
}
