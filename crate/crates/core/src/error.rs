use thiserror::Error;

use crate::arena::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid arena: {}", list(.0))]
    InvalidArena(Vec<Violation>),
    #[error("not a target-weighted arena: {0}")]
    NotTargetWeighted(String),
    #[error("not a tree arena: {0}")]
    NotTree(String),
    #[error("strictly positive weights required, edge {from} -> {to} has weights ({w1}, {w2})")]
    NotPositive { from: String, to: String, w1: u64, w2: u64 },
    #[error("invalid play: {0}")]
    InvalidPlay(String),
    #[error("strategy contract violated: {0}")]
    Contract(String),
    #[error("resource limit exceeded: {what} requires {required}, cap is {cap}")]
    Resource { what: &'static str, required: String, cap: u64 },
    #[error("invalid input: {0}")]
    Input(String),
}

fn list(violations: &[Violation]) -> String {
    violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
