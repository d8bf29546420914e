//! Errors shared by the counting strategies.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountError {
    /// The requested strategy cannot run on this instance (missing layout,
    /// disconnected pattern, no small-enough cover, ...). Callers may fall
    /// back to another strategy.
    #[error("strategy infeasible: {0}")]
    StrategyInfeasible(String),
    /// A size guard was exceeded (vertex-cover bound, pattern-size cap).
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    /// An internal cross-check failed; indicates a bug, never bad input.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    /// Bad arguments (unknown layer, malformed strategy combination).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
