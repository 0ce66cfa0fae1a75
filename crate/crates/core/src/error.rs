use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    /// The input was not an edge-disjoint biclique partition.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("edge collision on {{{u},{v}}}: bicliques {first} and {second} share this pair")]
    EdgeCollision {
        u: usize,
        v: usize,
        first: usize,
        second: usize,
    },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("pivot requested on an empty partition")]
    EmptyPartition,

    #[error("domain error: {0}")]
    Domain(String),

    /// A proved inequality or internal invariant failed; always a bug.
    #[error("internal invariant breached: {0}")]
    Internal(String),
}
