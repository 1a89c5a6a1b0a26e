//! Saturation numbers for `{K_3, P_k}`, `K_3 ∪ P_k` and `K_1 ∨ F`:
//! extremal constructions, exact pattern detectors, a saturation checker
//! and isomorph-free enumeration for exhaustive verification.

pub mod bitset;
pub mod campaign;
pub mod canon;
pub mod constructions;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod patterns;
pub mod saturation;
pub mod search;
pub mod witness;

pub use graph::{Diameter, Graph, GraphError, Vertex};
pub use saturation::{check_saturated, contains_member, ForbiddenFamily, Member, SaturationVerdict};
pub use witness::Witness;
