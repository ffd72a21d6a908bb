//! Experiments probing foliation independence, signaling and the structure
//! of the nonlinear evolution map.
//!
//! Every experiment returns an [`ExperimentReport`] whose verdict is a pure
//! function of its metrics and declared thresholds. Each one also runs its
//! own λ = 0 control; when the control misses its bound the nonlinear metric
//! is withheld and the verdict fails.

mod entanglement;
mod integrability;
mod report;
mod signaling;
mod structure;
mod sweep;

use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::dynamics::{ModelConfig, NonlinearityKind};
use crate::error::{Error, Result};
use crate::quantum::StateVector;
use crate::spacetime::{canonical_foliation, CanonicalKind, Foliation};

pub use entanglement::entanglement_monitor;
pub use integrability::{integrability_check, SwapWitness};
pub use report::{fmt_real, Bound, Cell, ExperimentReport, Threshold, Verdict};
pub use signaling::{signaling_experiment, MeasurementSetting};
pub use structure::{degeneracy_experiment, map_nonlinearity_check};
pub use sweep::foliation_sweep;

/// Bound on swap residues and sweep divergences for covariant kinds.
pub const COVARIANT_SWAP_TOL: f64 = 1e-12;
pub const LINEAR_SWAP_TOL: f64 = 1e-13;
pub const COVARIANT_SWEEP_TOL: f64 = 1e-10;
pub const LINEAR_SWEEP_TOL: f64 = 1e-11;
/// Smallest divergence accepted as a foliation-dependence witness.
pub const VIOLATION_MIN: f64 = 1e-3;

/// What an experiment's verdict should assert about foliation dependence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Expectation {
    /// Covariant for `none`/`local`, violation for the nonlocal kinds.
    #[default]
    Auto,
    Covariant,
    Violation,
}

impl Expectation {
    pub fn resolve(self, kind: &NonlinearityKind) -> Expectation {
        match self {
            Expectation::Auto if kind.is_local() => Expectation::Covariant,
            Expectation::Auto => Expectation::Violation,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Expectation::Auto => "auto",
            Expectation::Covariant => "covariant",
            Expectation::Violation => "violation",
        }
    }
}

impl FromStr for Expectation {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Expectation::Auto),
            "covariant" => Ok(Expectation::Covariant),
            "violation" => Ok(Expectation::Violation),
            other => Err(format!(
                "unknown expectation `{other}` (expected auto, covariant or violation)"
            )),
        }
    }
}

/// Preset initial states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InitialState {
    /// Product of site-dependent tilted qubits with distinct phases.
    #[default]
    Tilted,
    Zero,
    /// `|+…+⟩`.
    Plus,
}

impl InitialState {
    pub fn build(self, n_sites: usize) -> Result<StateVector> {
        match self {
            InitialState::Zero => StateVector::zero(n_sites),
            InitialState::Plus => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                StateVector::product(&vec![[C64::new(h, 0.0), C64::new(h, 0.0)]; n_sites])
            }
            InitialState::Tilted => {
                let factors: Vec<[C64; 2]> = (0..n_sites)
                    .map(|i| {
                        let theta = 0.4 + 0.3 * i as f64;
                        [
                            C64::new(theta.cos(), 0.0),
                            C64::from_polar(theta.sin(), 0.2 * i as f64),
                        ]
                    })
                    .collect();
                StateVector::product(&factors)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InitialState::Tilted => "tilted",
            InitialState::Zero => "zero",
            InitialState::Plus => "plus",
        }
    }
}

impl FromStr for InitialState {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tilted" => Ok(InitialState::Tilted),
            "zero" => Ok(InitialState::Zero),
            "plus" => Ok(InitialState::Plus),
            other => Err(format!(
                "unknown initial state `{other}` (expected tilted, zero or plus)"
            )),
        }
    }
}

pub(crate) fn echo_model(report: &mut ExperimentReport, config: &ModelConfig) {
    report.echo("n_sites", config.n_sites);
    report.echo("horizon", config.horizon);
    report.echo("omega", fmt_real(config.omega));
    report.echo("mu", fmt_real(config.mu));
    report.echo("link_coupling", fmt_real(config.link_coupling));
    report.echo("dt", fmt_real(config.dt));
    report.echo("base_operator", config.base_operator.name());
    report.echo("kind", config.nonlinearity.kind.name());
    if let Some(j) = config.nonlinearity.kind.remote_site() {
        report.echo("nonlocal_site", j);
    }
    if let Some(r) = config.nonlinearity.restrict_to {
        report.echo("restrict_to", r);
    }
    report.echo("lambda", fmt_real(config.nonlinearity.lambda));
}

/// The override foliation when given, else the synchronous one.
pub(crate) fn single_foliation(config: &ModelConfig, foliation: Option<&Foliation>) -> Result<Foliation> {
    match foliation {
        Some(f) => {
            if f.n_sites != config.n_sites || f.horizon != config.horizon {
                return Err(Error::FoliationMismatch {
                    found_sites: f.n_sites,
                    found_horizon: f.horizon,
                    n_sites: config.n_sites,
                    horizon: config.horizon,
                });
            }
            f.validate()?;
            Ok(f.clone())
        }
        None => canonical_foliation(config.n_sites, config.horizon, CanonicalKind::Synchronous),
    }
}

pub(crate) fn check_state(config: &ModelConfig, state: &StateVector) -> Result<()> {
    if state.n_sites() != config.n_sites {
        return Err(Error::DimensionMismatch(state.n_sites(), config.n_sites));
    }
    Ok(())
}
