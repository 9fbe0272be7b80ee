use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("ids must be nonempty strings")]
    EmptyId,
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("malformed dart {0} (expected <edge>@<tail>)")]
    BadDart(String),
    #[error("edge {0} is a self-loop")]
    SelfLoop(String),
    #[error("graph is disconnected (vertex {0} is unreachable or isolated)")]
    Disconnected(String),
    #[error("rotation mismatch: {0}")]
    RotationMismatch(String),
    #[error("not a directed cycle: {0}")]
    BadCycle(String),
    #[error("not a directed path: {0}")]
    BadPath(String),
    #[error("vertex {0} is not on the cycle")]
    VertexNotOnCycle(String),
    #[error("not a spanning tree: {0}")]
    NotATree(String),
    #[error("{what} too large: {size} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, size: usize, cap: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotorError {
    #[error("chip sits on the excluded root {0}")]
    ChipAtExcludedRoot(String),
    #[error("rotor at {0} does not leave its vertex")]
    BadRotor(String),
    #[error("configuration is not a unicycle: {0}")]
    NotUnicycle(String),
    #[error("period violation: {0}")]
    PeriodViolation(String),
    #[error("target {0} not reached within one period")]
    NotReached(String),
    #[error("cycle does not match the configuration's cycle")]
    CycleMismatch,
    #[error("off-cycle vertex {0} is attached to both sides of the cycle")]
    NotPartitionable(String),
    #[error("rotor-routing run revisited a state before reaching {0}")]
    Looping(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SandpileError {
    #[error("divisor degree mismatch: expected {expected}, got {actual}")]
    DegreeMismatch { expected: i64, actual: i64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rotor(#[from] RotorError),
}
