//! Exact Jaynes-Cummings dynamics for mixed initial states.
//!
//! The crate evolves a two-level atom coupled to a single quantized field
//! mode (resonant, rotating-wave) when either the field or the atom starts
//! in a statistical mixture, and cross-checks the resulting entropy
//! dynamics along three independent routes:
//!
//! 1. direct mixed-state evolution in a truncated Fock space
//!    ([`dynamics`]),
//! 2. the purified pure state of an artificial four-level atom
//!    ([`purification`]),
//! 3. a physical two-atom realization with a spectator atom outside the
//!    cavity ([`two_atom`]).
//!
//! All three must agree on the field entropy; the [`entropy`] module audits
//! them against each other and against the Araki-Lieb triangle inequality,
//! while [`observables`] provides atomic inversion, photon statistics, and
//! a displaced-parity Wigner function. [`verify`] bundles the cross-model
//! checks into a pass/fail report, and [`runner`] drives config-based time
//! sweeps with CSV output for the command-line frontend.
//!
//! Everything is double precision and dependency-light: the eigensolvers
//! and the matrix exponential live in [`linalg`].

pub mod config;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod observables;
pub mod purification;
pub mod runner;
pub mod tolerances;
pub mod two_atom;
pub mod verify;

pub use config::{ScenarioConfig, ScenarioKind, Tolerances};
pub use dynamics::{BranchSet, HybridState, Scenario, SmallHermitian};
pub use entropy::EntropyRecord;
pub use error::{Error, Result};
pub use fock::{DiagonalOperator, FockVector};
pub use linalg::CMatrix;
pub use observables::{GridSpec, PhaseSpaceGrid};
pub use two_atom::TwoAtomState;
