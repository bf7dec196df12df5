use crate::graph::VertexId;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("disc has {size} vertices, canonicalization cap is {cap}")]
    DiscTooLarge { size: usize, cap: usize },
    #[error("color {color} used more than once within a single disc")]
    ColorRepeatedWithinDisc { color: u32 },
    #[error("graph admits no decomposition into bounded discs")]
    NotDecomposable,
    #[error("pattern has {size} vertices, matching cap is {cap}")]
    PatternTooLarge { size: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("exact enumeration exceeds {limit} branches")]
    StateSpaceTooLarge { limit: u64 },
    #[error("graph has {m} edges, exact stream enumeration supports at most {max}")]
    TooManyEdges { m: usize, max: usize },
    #[error("{trials} trials give standard error above alpha/10; need at least {required}")]
    InsufficientTrials { trials: u64, required: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;
