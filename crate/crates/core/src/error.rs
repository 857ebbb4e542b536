use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("partition is empty")]
    EmptyInput,
    #[error("partition needs at least two parts, got {0}")]
    PartCountBelowTwo(usize),
    #[error("part sizes must be positive, got {0}")]
    NonPositivePart(i64),
    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("partitions have different totals ({0} vs {1})")]
    MismatchedTotals(usize, usize),
    #[error("partitions have different part counts ({0} vs {1})")]
    MismatchedLength(usize, usize),
    #[error("{from} does not strictly majorize {to}")]
    NotMajorized { from: String, to: String },
    #[error("partitions are identical, no chain to build")]
    Identical,
    #[error("invalid elementary step ({j} -> {k}) on {partition}")]
    InvalidStep {
        j: usize,
        k: usize,
        partition: String,
    },
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("partition has no singleton parts")]
    NoSingletonParts,
    #[error("criterion not applicable: {0}")]
    NotApplicable(String),
    #[error("root bracket failure: {0}")]
    BracketFailure(String),
    #[error("jacobi iteration did not converge after {sweeps} sweeps (off-norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}
