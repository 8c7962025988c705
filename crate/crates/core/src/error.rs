use thiserror::Error;

use crate::graph::TwinKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("graph is not cubic: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph is not twin-free: {u} and {v} are {kind} twins")]
    NotTwinFree { u: usize, v: usize, kind: TwinKind },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("set is not a member of the matching-transversal family: {0}")]
    NotInFamily(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("exact oracle gave up after {nodes} search nodes")]
    OracleBudgetExhausted { nodes: u64 },
}

impl Error {
    /// `true` for errors caused by the caller's input rather than by a
    /// failed internal check.
    pub fn is_input(&self) -> bool {
        !matches!(self, Error::Internal(_) | Error::GenerationFailed(_) | Error::OracleBudgetExhausted { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph6 parse error at byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("malformed order header")]
    BadHeader,
    #[error("truncated edge data: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing bytes after edge data")]
    TrailingGarbage,
    #[error("nonzero padding bits")]
    NonzeroPadding,
}
