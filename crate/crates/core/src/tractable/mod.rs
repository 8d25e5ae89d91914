//! Structured utilities with dedicated solvers: separable `f(a) + g(s)`,
//! tree-structured sums of local factors, and linear `w_a · s`.
//!
//! The bounded-action explicit-state case needs no module of its own; it is
//! the [`crate::analysis`] engine.

mod linear;
mod separable;
mod tree;

pub use linear::{linear_relevance, LinearUtility};
pub use separable::{detect_separable, solve_separable, SeparableUtility};
pub use tree::{
    expand_tree, tree_opt, tree_relevant_coordinates, tree_relevant_coordinates_decomposed,
    Strategy, TreeRelevance, TreeUtility,
};
