//! Tools for turning AMR graphs into one-line text and back.
//!
//! The crate covers:
//!
//! - [`graph`] — the rooted directed graph model, inverse-role algebra, and
//!   structural validation;
//! - [`penman`] — Penman notation parsing and deterministic serialization,
//!   with and without variables;
//! - [`triple`] — pipe-separated triple encodings in the four
//!   variable/inverse-role variants, and their decoder;
//! - [`smatch`] — Smatch scoring with a restart hill-climber and an
//!   exhaustive oracle;
//! - [`analysis`] — depth/length score breakdowns, parent-child token
//!   distances, and the relation-role census;
//! - [`synth`] — seeded random graphs for tests and diagnostics.
//!
//! Everything is pure and `no_std`-compatible (with `alloc`); file formats,
//! corpus handling, and the command line live in the companion `amr-cli`
//! crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod graph;
pub mod linearize;
pub mod penman;
pub mod smatch;
pub mod synth;
pub mod triple;
mod walk;

pub use graph::{
    AmrGraph, Concept, Constant, Edge, EdgeTarget, GraphError, Role, Term, Triple, Variable,
    Violation,
};
pub use linearize::{DecodeError, LinearizationConfig};
pub use penman::PenmanConfig;
pub use smatch::{SmatchOptions, SmatchResult, SmatchTripleSet};
pub use triple::TripleConfig;
