use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::{evolve, free_field, ModelConfig, NonlinearityKind};
use crate::error::{Error, Result};
use crate::quantum::{expectation, state_distance, StateVector};
use crate::spacetime::{canonical_foliation, random_foliation, CanonicalKind, Foliation};

use super::{
    check_state, echo_model, Bound, Cell, Expectation, ExperimentReport, COVARIANT_SWEEP_TOL,
    LINEAR_SWEEP_TOL, VIOLATION_MIN,
};

struct Sample {
    label: String,
    seed: Option<u64>,
    foliation: Foliation,
}

fn samples(
    config: &ModelConfig,
    n_foliations: usize,
    seed: u64,
    extra: &[Foliation],
) -> Result<Vec<Sample>> {
    let (n, t) = (config.n_sites, config.horizon);
    let mut out = vec![
        Sample {
            label: "synchronous".into(),
            seed: None,
            foliation: canonical_foliation(n, t, CanonicalKind::Synchronous)?,
        },
        Sample {
            label: "staircase".into(),
            seed: None,
            foliation: canonical_foliation(n, t, CanonicalKind::Staircase)?,
        },
    ];
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..n_foliations {
        let s = seeds.next_u64();
        out.push(Sample {
            label: format!("random_{k}"),
            seed: Some(s),
            foliation: random_foliation(n, t, s)?,
        });
    }
    for (k, f) in extra.iter().enumerate() {
        if f.n_sites != n || f.horizon != t {
            return Err(Error::FoliationMismatch {
                found_sites: f.n_sites,
                found_horizon: f.horizon,
                n_sites: n,
                horizon: t,
            });
        }
        f.validate()?;
        out.push(Sample {
            label: format!("replay_{k}"),
            seed: f.seed,
            foliation: f.clone(),
        });
    }
    Ok(out)
}

fn final_states(config: &ModelConfig, initial: &StateVector, samples: &[Sample]) -> Result<Vec<StateVector>> {
    samples
        .par_iter()
        .map(|s| evolve(initial, &s.foliation, config).map(|(psi, _)| psi))
        .collect()
}

fn max_pairwise(states: &[StateVector]) -> Result<(f64, usize, usize)> {
    let mut best = (0.0, 0, 0);
    for a in 0..states.len() {
        for b in a + 1..states.len() {
            let d = state_distance(&states[a], &states[b])?;
            if d > best.0 {
                best = (d, a, b);
            }
        }
    }
    Ok(best)
}

/// Evolves one initial state along the two canonical foliations,
/// `n_foliations` seeded random ones and any replayed foliations, and
/// compares the final states pairwise.
pub fn foliation_sweep(
    config: &ModelConfig,
    initial: &StateVector,
    n_foliations: usize,
    seed: u64,
    extra: &[Foliation],
    expect_mode: Expectation,
) -> Result<ExperimentReport> {
    config.validate()?;
    check_state(config, initial)?;
    let mut report = ExperimentReport::new("foliation_sweep");
    echo_model(&mut report, config);
    report.echo("n_foliations", n_foliations);
    report.echo("seed", seed);
    let expect = expect_mode.resolve(&config.nonlinearity.kind);
    report.echo("expectation", expect.name());

    let samples = samples(config, n_foliations, seed, extra)?;
    if extra.len() == 1 {
        report.foliation = Some(extra[0].clone());
    }

    let control_states = final_states(&config.with_lambda(0.0), initial, &samples)?;
    let (control, _, _) = max_pairwise(&control_states)?;
    report.metric("control_max_pairwise_distance", control);
    report.expect("control_max_pairwise_distance", Bound::AtMost(LINEAR_SWEEP_TOL));
    if control > LINEAR_SWEEP_TOL {
        report
            .notes
            .push("λ = 0 control exceeded its bound; nonlinear metric withheld".into());
        report.expect("max_pairwise_distance", Bound::AtMost(COVARIANT_SWEEP_TOL));
        return Ok(report.finalize());
    }

    let states = final_states(config, initial, &samples)?;
    let (worst, a, b) = max_pairwise(&states)?;
    report.metric("max_pairwise_distance", worst);
    report.metric("foliations", samples.len() as f64);
    report.metric("steps_per_foliation", samples[0].foliation.len() as f64);
    match expect {
        Expectation::Violation => {
            report.expect("max_pairwise_distance", Bound::AtLeast(VIOLATION_MIN))
        }
        _ => {
            let linear = config.nonlinearity.lambda == 0.0
                || matches!(config.nonlinearity.kind, NonlinearityKind::None);
            let tol = if linear { LINEAR_SWEEP_TOL } else { COVARIANT_SWEEP_TOL };
            report.expect("max_pairwise_distance", Bound::AtMost(tol));
        }
    }
    if worst > 0.0 {
        report.notes.push(format!(
            "largest divergence between `{}` and `{}`",
            samples[a].label, samples[b].label
        ));
    }

    let n = config.n_sites;
    report.columns = ["index", "label", "seed", "distance_to_synchronous"]
        .iter()
        .map(|s| s.to_string())
        .chain((0..n).map(|i| format!("expect_{i}")))
        .collect();
    for (k, (sample, psi)) in samples.iter().zip(&states).enumerate() {
        let mut row = vec![
            Cell::from(k),
            Cell::from(sample.label.as_str()),
            sample
                .seed
                .map_or(Cell::from("-"), |s| Cell::from(s.to_string())),
            Cell::from(state_distance(&states[0], psi)?),
        ];
        for i in 0..n {
            row.push(Cell::from(expectation(psi, &free_field(i, config.horizon, config))?));
        }
        report.rows.push(row);
    }
    Ok(report.finalize())
}
