//! Flips, local complementations and shallow vertex minors of graphs over
//! GF(2), with generators for the graph families involved, a first-order
//! evaluator, and brute-force containment oracles.

pub mod canon;
pub mod commute;
pub mod error;
pub mod families;
pub mod flips;
pub mod gf2;
pub mod graph;
pub mod logic;
pub mod random;
pub mod search;
pub mod structures;
pub mod verify;
pub mod vminor;

pub use error::{Error, Result};
pub use graph::{vset, Distance, Graph, VertexId, VertexSet};
