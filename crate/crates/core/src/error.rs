use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by the graph layer, the tree mutators and the update engine.
///
/// Everything except [`BfsError::UnknownVertex`] indicates a broken caller
/// contract or an engine bug; the engine never produces them on valid input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfsError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is already discovered")]
    AlreadyDiscovered(VertexId),
    #[error("vertex {0} is not discovered")]
    Undiscovered(VertexId),
    #[error("vertex {child} already has tree parent {parent}")]
    ParentAlreadySet { child: VertexId, parent: VertexId },
    #[error("vertex {parent} is not the tree parent of {child}")]
    NotParent { parent: VertexId, child: VertexId },
    #[error("vertex {0} still has tree children")]
    HasChildren(VertexId),
    #[error("vertex {0} is still attached to a tree parent")]
    HasParent(VertexId),
    #[error("the root cannot be {0}")]
    RootMutation(&'static str),
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

pub type Result<T, E = BfsError> = std::result::Result<T, E>;
