//! Exact detectors for the forbidden patterns, plus tree-structure tools.
//!
//! Every detector explores vertices in ascending id order, so the witness
//! returned for a given graph is always the same.

use thiserror::Error;

use crate::graph::GraphError;

mod clique;
mod forest;
mod layers;
mod path;
mod subtree;

pub use clique::{for_each_clique, has_clique};
pub use forest::{contains_disjoint_clique_path, contains_join_k1, contains_linear_forest};
pub use layers::{layer_decompose, LayerMap};
pub use path::{has_path_of_order, longest_path_from};
pub use subtree::subtree_contains;

pub(crate) use forest::find_union;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("input is not a tree")]
    NotATree,
    #[error("tree diameter {0} is below 2")]
    DiameterTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
