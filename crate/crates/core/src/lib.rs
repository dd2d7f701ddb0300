//! Layer-based ("shifting") approximation schemes for minimum vertex cover,
//! minimum dominating set and maximum independent set on graphs of bounded
//! local tree-width, together with the decomposition machinery they run on.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple undirected graphs, BFS levels, contractions, generators
//!   and the edge-list text format.
//! * [`treedecomp`]: tree and path decompositions, validity checking,
//!   heuristic and exact tree-width, the path-attachment construction and
//!   decompositions over a graph class.
//! * [`dp`]: exact dynamic programming over tree decompositions plus a
//!   brute-force oracle.
//! * [`ptas`]: the shifting schemes over single graphs, apex sets and
//!   clique-sum decompositions.
//! * [`sqrt`]: the level-interval construction of an `O(sqrt(lambda n))` width
//!   decomposition.
//! * [`ltw`]: local tree-width profiles and bound checks.

pub mod dp;
pub mod error;
pub mod graph;
pub mod ltw;
pub mod ptas;
pub mod sqrt;
pub mod treedecomp;

pub use dp::{ProblemKind, Solution};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use treedecomp::{PathDecomposition, TreeDecomposition};
