//! Exact counters, extremal constructions and step-function bounds for the
//! number of 4-edge paths in graphs with a fixed number of vertices and edges.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: simple undirected graphs, I/O and canonical keys.
//! - [`construct`]: quasi-cliques, quasi-stars and near-regular graphs.
//! - [`count`]: 2-paths, k-stars, 4-paths and 4-walks, each with a brute-force twin.
//! - [`bounds`]: closed-form density bounds and the crossing point of the two upper branches.
//! - [`stepfun`]: symmetric step functions on the unit square, the functional `S`,
//!   the extremal families and a local-search maximizer.
//! - [`search`]: exhaustive extremal search over all labeled graphs with `n <= 8`.
//! - [`verify`]: the bundled property suites behind `pathdensity verify-all`.

pub mod bounds;
pub mod construct;
pub mod count;
mod error;
pub mod fmt;
pub mod graph;
pub mod search;
pub mod stepfun;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Adjacency, CanonicalKey, Graph};
