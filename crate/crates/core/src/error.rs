//! Error types shared across the crate.

use crate::digraph::{EdgeId, ValidityReport, VertexId};
use thiserror::Error;

/// Structural problems with a digraph: the input is not even a well-formed
/// multidigraph candidate. Distinct from a clean "not good" verdict.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(EdgeId),
    #[error("edge {edge} references unknown vertex {vertex}")]
    DanglingEndpoint { edge: EdgeId, vertex: VertexId },
    #[error("height given for unknown vertex {0}")]
    HeightForUnknownVertex(VertexId),
    #[error("heights must be given for all vertices or none; {0} has no height")]
    MissingHeight(VertexId),
    #[error("edge {edge} is not height-increasing: {src} has height >= {dst}")]
    NonMonotoneHeights {
        edge: EdgeId,
        src: VertexId,
        dst: VertexId,
    },
    #[error("graph has no vertices")]
    Empty,
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("edge-interior parameter must lie strictly between 0 and 1")]
    ParameterOutOfRange,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("digraph is not good: {0:?}")]
    NotGood(Box<ValidityReport>),
}

#[derive(Debug, Clone, Error)]
pub enum SurgeryError {
    #[error("input digraph is not a valid good digraph")]
    InvalidInput(Box<ValidityReport>),
    #[error("chosen point {0} is a local extremum (degree-1 or one-sided vertex)")]
    ExtremumPoint(VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("critical-point annotation fails the degree-count rule")]
    CountsInvalid,
    #[error("annotation names unknown vertex {0}")]
    AnnotationUnknownVertex(VertexId),
    #[error("embedding map is structurally inconsistent: {0}")]
    EmbeddingStructure(String),
    #[error("embedding is not valid")]
    EmbeddingInvalid,
    #[error("host violates the augmentation hypotheses: {0}")]
    HostPrecondition(String),
    #[error("the two embeddings have overlapping images in the host")]
    NotDisjoint,
    #[error("{0} is not a degree-2 vertex")]
    NotDegreeTwo(VertexId),
    #[error("vertex would be an extremum: in- and out-degree must both be positive")]
    ZeroDegreeSplit,
}

#[derive(Debug, Clone, Error)]
pub enum MeshError {
    #[error("duplicate mesh vertex id {0}")]
    DuplicateVertex(String),
    #[error("triangle references unknown vertex {0}")]
    UnknownVertex(String),
    #[error("degenerate triangle {0:?}")]
    DegenerateTriangle([String; 3]),
    #[error("duplicate triangle {0:?}")]
    DuplicateTriangle([String; 3]),
    #[error("edge ({0}, {1}) lies in {2} triangles, expected exactly 2")]
    EdgeNotInTwoTriangles(String, String, usize),
    #[error("link of vertex {0} is not a single cycle")]
    BadLink(String),
    #[error("triangle adjacency graph is disconnected")]
    Disconnected,
    #[error("mesh has no triangles")]
    Empty,
    #[error("missing height for mesh vertex {0}")]
    MissingHeight(String),
    #[error("height given for unknown mesh vertex {0}")]
    HeightForUnknownVertex(String),
    #[error("cluster names unknown vertex {0}")]
    ClusterUnknownVertex(String),
    #[error("cluster members {0} and {1} have different heights")]
    ClusterHeightMismatch(String, String),
    #[error("adjacent vertices {0} and {1} share a height outside any common cluster")]
    Genericity(String, String),
    #[error("vertex {0} has an equal-height neighbour; classify it through its cluster")]
    EqualHeightNeighbour(String),
    #[error("equal-height group around {0} does not span a disk")]
    BadCriticalGroup(String),
}

#[derive(Debug, Clone, Error)]
pub enum ConsumError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("point does not name an element of the swept Reeb digraph")]
    UnknownReebPoint,
    #[error("window [{0}, {1}] is empty or does not contain the point value")]
    BadWindow(String, String),
    #[error("no regular strip found within {0} refinement rounds: {1}")]
    NoStrip(usize, String),
    #[error("strip windows do not overlap around the gluing level after rescaling")]
    WindowMismatch,
    #[error("sweep failed on the glued surface: {0}")]
    SweepFailed(String),
}
