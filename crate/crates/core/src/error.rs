use core::fmt;

use crate::graph::ValidationReport;

/// Errors produced by graph construction, solvers, oracles and reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An edge refers to a node index that does not exist.
    NodeOutOfRange { node: usize, n: usize },
    /// Weights too large: `n^2 * W` (with headroom) does not fit in an `i64`.
    WeightOverflow,
    /// The graph violates a structural precondition of the solver.
    InvalidGraph(ValidationReport),
    /// A parameter is outside the operation's domain.
    InvalidArgument(&'static str),
    /// An exhaustive oracle would exceed its budget.
    BudgetExceeded { needed: u128, limit: u128 },
    /// An energy function handed to a transformation breaks its contract.
    Contract(&'static str),
    /// A reduction step that needs a bipartite graph got a same-owner edge.
    NotBipartite { edge: usize },
    /// A generator spec that cannot be realised.
    Infeasible(&'static str),
    /// A claimed penalty or energy bound was shown to be false.
    AssumptionViolated(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NodeOutOfRange { node, n } => {
                write!(f, "node {node} out of range for a graph with {n} nodes")
            }
            Error::WeightOverflow => f.write_str("edge weights overflow the n^2*W headroom"),
            Error::InvalidGraph(report) => write!(f, "invalid game graph: {report}"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
            Error::BudgetExceeded { needed, limit } => {
                write!(f, "oracle budget exceeded: needs {needed}, limit {limit}")
            }
            Error::Contract(what) => write!(f, "contract violation: {what}"),
            Error::NotBipartite { edge } => write!(f, "edge {edge} joins two nodes of the same owner"),
            Error::Infeasible(what) => write!(f, "infeasible generator spec: {what}"),
            Error::AssumptionViolated(what) => write!(f, "assumption violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
