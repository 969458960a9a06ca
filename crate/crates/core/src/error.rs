use thiserror::Error;

use crate::sets::{EdgeId, EdgeSet, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge {0} declared twice")]
    DuplicateEdge(EdgeId),
    #[error("identifier {0} is outside the supported range")]
    IdOutOfRange(u32),
    #[error("edge set {0:?} is not a cycle of the graph")]
    NotACycle(EdgeSet),
    #[error("theta {0:?} contains exactly two balanced cycles")]
    ThetaViolation([EdgeSet; 3]),
    #[error("signature classes overlap on edge {0}")]
    OverlappingSignature(EdgeId),
    #[error("vertex {0} is not balancing")]
    NotBalancing(VertexId),
    #[error("biased graph is not signed")]
    NotSigned,
    #[error("biased graph is not almost balanced at the requested vertex")]
    NotAlmostBalanced,
    #[error("unbalancing class {index} does not exist ({count} classes)")]
    BadClass { index: usize, count: usize },
    #[error("a block at {0} carries more than two unbalancing classes")]
    TooManyClasses(VertexId),
    #[error("cannot contract loop {0}")]
    LoopContraction(EdgeId),
    #[error("contract and delete sets overlap")]
    MinorOverlap,
    #[error("matroids have different ground sets")]
    GroundMismatch,
    #[error("{what} exceeds the limit of {limit}")]
    CapExceeded { what: &'static str, limit: usize },
    #[error("paths do not share both endpoints")]
    EndpointMismatch,
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("vertices must be distinct, got {0} twice")]
    SameVertex(VertexId),
    #[error("matroid check failed: {0}")]
    MatroidMismatch(String),
    #[error("target matroid is graphic; graphic representations are not enumerated")]
    GraphicTarget,
    #[error("target matroid is disconnected")]
    DisconnectedTarget,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("3-circuit {edges:?} appears as a {shape}, which cannot be enlarged")]
    CircuitShapeUnsupported { edges: [EdgeId; 3], shape: &'static str },
    #[error("line {line}, column {column}: {reason}")]
    Parse { line: usize, column: usize, reason: String },
}

impl Error {
    /// Exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 2,
            _ => 1,
        }
    }
}
