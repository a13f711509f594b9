//! Energy games on weighted game graphs: value iteration over admissible
//! lists, additive approximation by weight rounding, an exact solver built
//! on repeated approximation, reductions to complete bipartite games, and
//! brute-force oracles for small instances.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod admissible;
pub mod approx;
pub mod energy;
pub mod error;
pub mod exact;
pub mod examples;
pub mod fixpoint;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod potential;
pub mod reductions;
pub mod viter;

pub use admissible::AdmissibleList;
pub use energy::{Energy, EnergyFunction};
pub use error::{Error, Result};
pub use fixpoint::{check_progress_conditions, verify_minimal};
pub use graph::{Edge, GameGraph, Player, ValidationReport, Violation};
pub use potential::{apply_potential, PotentialGame};
