use crate::graph::{EdgeId, VertexId};
use crate::monitor::Solution;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge between vertices {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("edge ({u},{v}) has weight 0; weights must be positive integers")]
    ZeroWeight { u: VertexId, v: VertexId },
    #[error("vertex id {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(VertexId, usize),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("vertex cost {found} for vertex {vertex} is not binary")]
    NonBinaryCost { vertex: VertexId, found: u64 },
    #[error("required edge id {0} is not an edge of the graph")]
    RequiredEdgeMissing(EdgeId),
    #[error("distance accumulator would overflow 64 bits")]
    ArithmeticOverflow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("infeasible instance: edge {witness} is not the unique shortest path between its endpoints")]
    InfeasibleInstance { witness: EdgeId },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("search budget of {budget} candidate evaluations exceeded")]
    BudgetExceeded { budget: u64, best: Box<Solution> },
    #[error("item {0} is not covered by any set")]
    UncoverableItem(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
