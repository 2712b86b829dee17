use thiserror::Error;

/// Invalid input to a graph query, construction or pattern search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {0} is isolated; clique substitution is undefined there")]
    IsolatedVertex(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Failure of the pursuit solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the game needs at least one vertex")]
    EmptyGraph,
    #[error("the game needs at least one cop")]
    NoCops,
    #[error("state budget exceeded: {required} positions needed, budget is {budget}")]
    StateBudget { required: u128, budget: u64 },
    #[error("cop placement does not match the solved game")]
    InvalidPlacement,
    #[error("trace did not terminate within {max_rounds} rounds")]
    TraceExhausted { max_rounds: usize },
}
