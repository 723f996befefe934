//! Stable b-matchings of acyclic preference-based systems.
//!
//! A preference-based system is a set of `N` nodes, an Erdős–Rényi acceptance
//! graph restricting which pairs may collaborate, a symmetric mark matrix from
//! which every node derives its preference list, and a quota bounding the
//! number of simultaneous mates. Symmetric marks make the preferences acyclic,
//! so the system has exactly one stable configuration.
//!
//! The crate is split along the pipeline:
//!
//! - [`instance`]: domain types and the ranking algebra (`prefers`,
//!   complete and acceptable ranks).
//! - [`generate`]: seeded instance construction for every preference kind.
//! - [`engine`]: the greedy stable configuration and an independent stability
//!   checker.
//! - [`meanfield`]: discrete recursions (mean-field, exact node-based, and a
//!   brute-force oracle).
//! - [`fluid`]: closed-form fluid limits, special functions and ODE
//!   integration for the b-matching limit systems.
//! - [`metrics`]: empirical estimators and small-world statistics.
//!
//! Node indices in the public API are 1-based labels, `1..=N`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod engine;
mod error;
pub mod fluid;
pub mod generate;
pub mod instance;
pub mod meanfield;
pub mod metrics;

pub use engine::{stable_configuration, symmetric_edge_key, verify_stability, EdgeKey};
pub use error::{Error, Result};
pub use generate::{GenSpec, KindSpec};
pub use instance::{
    AcceptanceGraph, Configuration, Instance, Marks, Norm, PreferenceKind, SymMatrix,
};
pub use meanfield::{PairDistribution, RankDistribution};
