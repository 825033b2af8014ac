use thiserror::Error;

use crate::oracle::ExtremalResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph spec: {0}")]
    InvalidSpec(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },

    #[error("unknown pattern `{0}` (expected wN, kN, cN or g6:<graph6>)")]
    UnknownPattern(String),

    #[error("infeasible construction: {0}")]
    Infeasible(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("n = {n} exceeds the configured cap of {cap}; {hint}")]
    OverCap {
        n: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("search budget exhausted after {nodes} nodes (best lower bound so far: {})", .partial.ex_value)]
    BudgetExceeded {
        nodes: u64,
        partial: Box<ExtremalResult>,
    },

    #[error("formula forms disagree at n = {n}: {left} vs {right}")]
    FormulaMismatch { n: usize, left: u64, right: u64 },
}
