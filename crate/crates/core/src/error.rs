use crate::multigraph::{EdgeId, VertexId};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop requested at vertex {0}")]
    Loop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex {0} already exists")]
    DuplicateVertex(VertexId),
    #[error("edge {0} already exists")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} is not incident with {vertex}")]
    NotIncident { edge: EdgeId, vertex: VertexId },
    #[error("edges {0} and {1} are the same edge")]
    SameEdge(EdgeId, EdgeId),
    #[error("edges {e1} and {e2} share their far endpoint {vertex}; lifting them would create a loop")]
    CoincidentEnds {
        e1: EdgeId,
        e2: EdgeId,
        vertex: VertexId,
    },
    #[error("cannot contract an empty vertex set")]
    EmptyBlock,
    #[error("edge {edge} cannot be oriented {tail} -> {head}")]
    BadArc {
        edge: EdgeId,
        tail: VertexId,
        head: VertexId,
    },
    #[error("edge {0} is already oriented the other way")]
    Reoriented(EdgeId),
    #[error("query needs two distinct vertices, got {0} twice")]
    SamePair(VertexId),
    #[error("orientation is partial: edge {0} has no direction")]
    PartialOrientation(EdgeId),
    #[error("source and sink sets intersect at {0}")]
    OverlappingTerminals(VertexId),
    #[error("terminal set is empty")]
    EmptyTerminals,
    #[error("graph is not {required}-edge-connected: cut of size {found} around {side:?}")]
    NotEdgeConnected {
        required: u32,
        found: u32,
        side: Vec<VertexId>,
    },
    #[error("target level {level} exceeds local connectivity {found} between {x} and {y}")]
    TargetTooHigh {
        level: u32,
        found: u32,
        x: VertexId,
        y: VertexId,
    },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("brute-force bound exceeded: {what} is {found}, bound {bound}")]
    BoundExceeded {
        what: &'static str,
        found: usize,
        bound: usize,
    },
    #[error("edge set does not admit an Euler trail: {0}")]
    NotEulerian(String),
    #[error("partial orientation is not a consistent Eulerian orientation: {0}")]
    NotConsistent(String),
    #[error("no odd-vertex pairing satisfying the cut condition was found")]
    PairingExhausted,
    #[error("certificate search failed: {0}")]
    Certificate(String),
    #[error("invariant violated at stage {stage}: {detail}")]
    Invariant { stage: usize, detail: String },
    #[error("graph document is malformed: {0}")]
    Format(String),
}
