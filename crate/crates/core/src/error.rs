use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(Vertex),
    #[error("input graph has {0} connected components, expected at most one")]
    DisconnectedInput(usize),
    #[error("operation needs a non-empty graph")]
    EmptyGraph,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("digraph contains an odd directed cycle: {0:?}")]
    OddCycle(Vec<Vertex>),
    #[error("list of vertex {vertex} has {found} colors, at least {needed} required")]
    ListTooSmall {
        vertex: Vertex,
        needed: usize,
        found: usize,
    },
    #[error("vertex {0} has no color list")]
    MissingList(Vertex),
    #[error("graph is not chordal")]
    NotChordal,
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("graph is not 2-choosable")]
    NotTwoChoosable,
    #[error("no color block holds a majority of the choice at vertex {0}")]
    NoMajorityBlock(Vertex),
    #[error("randomized procedure failed in all {0} attempts")]
    Exhausted(u32),
    #[error("parts are not pairwise disjoint (vertex {0} repeated)")]
    OverlappingParts(Vertex),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("coloring oracle refused an instance it was expected to solve")]
    OracleRefused,
    #[error("list chooser refused an instance it was expected to solve")]
    ChooserRefused,
    #[error("parameters do not describe a simple graph: {0}")]
    NotSimple(String),
    #[error("graph is not bipartite with the given sides")]
    NotBipartite,
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
