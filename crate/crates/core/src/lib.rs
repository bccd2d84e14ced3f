//! Minimum cost homomorphisms to small target digraphs.
//!
//! The crate covers exact solvers (branch and bound, a minimum cut reduction
//! for targets with a Min-Max ordering, directed cycle targets), the
//! bipartite representation of a digraph with forbidden-structure detection,
//! and classifiers that decide whether a target is polynomial or NP-hard for
//! several families, attaching a checkable certificate either way.

pub mod birep;
pub mod classify;
pub mod cli;
pub mod digraph;
mod error;
pub mod flow;
pub mod format;
pub mod minmax;
pub mod solver;

pub use error::{Error, Result};
