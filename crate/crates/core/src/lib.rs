//! Discrete-spacetime simulation of nonlinear Tomonaga–Schwinger evolution on
//! a 1+1D qubit chain.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: small dense complex matrices, Hermitian eigensolver and
//!   matrix exponential;
//! - [`quantum`]: statevectors, local gates, reduced states, distances and
//!   entropies;
//! - [`spacetime`]: brickwork hypersurfaces, deformations and foliations;
//! - [`dynamics`]: the frozen-coefficient nonlinear stepper and propagator
//!   composition;
//! - [`experiments`]: covariance, signaling and structure experiments that
//!   return machine-checkable reports;
//! - [`cli`]: config parsing and the batch runner behind the `nlts` binary.
//!
//! Units: ħ = 1, lattice spacing 1, light speed one site per step.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod quantum;
pub mod spacetime;

pub use error::{Error, Result};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
