//! Sector-decomposed state spaces for theories with a finite maximal order
//! of interference `h`, together with their slit and coherence projectors,
//! search oracles, and the hybrid-argument machinery behind the
//! `Ω(√(N/h))` query lower bound for unstructured search.
//!
//! The crate is split in three layers:
//!
//! * [`sector_algebra`]: exact integer combinatorics on the subset lattice.
//! * [`theory_models`]: concrete classical, quantum and synthetic order-`h`
//!   models with projectors, oracles and reversible maps.
//! * [`search_sim`]: search trajectories, progress measures, bound checks
//!   and scaling sweeps.
//!
//! [`report`] serializes progress reports and sweep tables to CSV and JSON.

pub mod error;
pub mod report;
pub mod search_sim;
pub mod sector_algebra;
pub mod theory_models;

pub use error::{Error, Result};

/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default absolute tolerance for floating point checks.
pub const DEFAULT_TOL: f64 = 1e-9;
