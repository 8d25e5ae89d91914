//! Exact analysis of finite decision problems with coordinate structure.
//!
//! Given actions, finite coordinate domains and a utility table, the crate
//! decides which coordinate sets are *sufficient* (states that agree on them
//! share an optimal-action set), finds the relevant coordinates and the
//! minimum sufficient set, searches anchor assignments, and builds the
//! propositional reduction gadgets whose equivalences can be checked
//! against brute-force oracles. Structured utilities (separable, tree,
//! linear) have dedicated solvers, and [`econ`] covers the accompanying
//! cost arithmetic.

pub mod analysis;
pub mod anchor;
pub mod cli;
pub mod document;
pub mod econ;
pub mod error;
pub mod fixtures;
pub mod formula;
pub mod problem;
pub mod rational;
pub mod reductions;
pub mod space;
pub mod tractable;

pub use analysis::{
    decision_quotient, insufficiency_witness, is_sufficient, minimal_sufficient_set, opt,
    relevant_coordinates, sufficiency_via_dq, InsufficiencyWitness, OptTable,
};
pub use anchor::{anchor_sufficiency, subcube_is_constant, AnchorAssignment};
pub use error::{Error, Result};
pub use formula::{exists_forall_brute, is_tautology_brute, Assignment, Expr, Formula};
pub use problem::{project, CoordSet, DecisionProblem, Domain, Limits, OptSet, State};
pub use rational::Rational;
pub use reductions::{GadgetInstance, GadgetKind};
