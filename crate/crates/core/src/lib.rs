//! Cops and robbers on finite digraphs.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! algorithms:
//!
//! - [`digraph`]: simple digraph storage and elementary queries.
//! - [`constructions`]: generator families, clique substitution and arc
//!   subdivision.
//! - [`patterns`]: induced-subgraph, path-subgraph and `P_k*` searches.
//! - [`solver`]: exact retrograde solver for the k-cop game, cop number
//!   and game traces.
//!
//! File formats, the verification suites and the command line tool live in
//! the `pursuit` companion crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constructions;
pub mod digraph;
pub mod error;
pub mod patterns;
pub mod solver;

pub use digraph::{Digraph, NeighborhoodPartition, Vertex};
pub use error::{GraphError, SolveError};
pub use patterns::{PatternWitness, WitnessKind};
pub use solver::{CopNumber, GamePosition, GameTrace, Side, SolveResult};
