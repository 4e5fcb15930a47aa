//! Hamiltonian cycles in Cartesian products `P_n □ G`.
//!
//! The crate builds Hamiltonian cycles constructively from a perfect matching
//! or a `{P2, P3}`-factor of the second factor, certifies negative answers
//! (no path factor, not 1-tough) with checkable cut sets, and carries
//! independent brute-force oracles that the constructions are tested against.
//!
//! Vertices are 1-indexed everywhere. A vertex of `G1 □ H` is written `i_v`
//! (layer `i` of the first factor, vertex `v` of `H`) and encoded as the
//! integer `(i - 1) * |V(H)| + v`.

pub mod bits;
pub mod budget;
pub mod factor;
pub mod graph;
pub mod ham;
pub mod oracle;
pub mod toughness;
pub mod trees;

pub use budget::Budget;
pub use factor::{FactorCertificate, PathFactor};
pub use graph::{Bipartition, Graph, GraphError, Product, ProductLabel};
pub use ham::{HamCycle, VertexType};
pub use toughness::{CutWitness, OneTough, ToughnessValue};
