//! Extremal graphs for forbidden disjoint unions of vertex-critical graphs.
//!
//! The crate builds the extremal constructions (odd-wheel graphs
//! `K_{n0,n-n0}` with a near-regular short-component graph on one side,
//! and joins `K_{ℓ-1} ∏ H`), evaluates the matching closed-form maxima,
//! and checks both against an exact isomorph-free search for `ex(n, F)`
//! on small orders.

pub mod canon;
pub mod chromatic;
pub mod constructions;
pub mod embed;
pub mod error;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod oracle;
pub mod set;
pub mod stability;
pub mod standard;

pub use error::{Error, Result};
pub use family::{ForbiddenFamily, Pattern};
pub use graph::{disjoint_union, join, Graph};
