//! Classification of zero-dimensional σ-Polish metrizable spaces up to weak
//! homeomorphism.
//!
//! Spaces are terms over `0`, `fin(n)`, `w`, `2^w`, `N^w` and `Q` with `+`
//! (topological sum) and `*` (product). The crate normalizes terms, infers
//! their topological fingerprints, classifies them into the nine infinite
//! classes (plus the empty and finite ones), realizes them as unions of
//! automaton-generated closed subsets of the Baire space, and builds and
//! checks explicit weak-homeomorphism certificates on those realizations.

pub mod algebra;
pub mod classify;
pub mod point;
pub mod present;
pub mod properties;
pub mod witness;

pub use algebra::{normalize, parse, render, NormalForm, SpaceTerm};
pub use classify::{classify, classify_by_tree, WeakHomeoClass};
