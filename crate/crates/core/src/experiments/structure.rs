use num_complex::Complex64 as C64;

use crate::dynamics::{compose_map, evolve, evolve_tracked, free_field, ModelConfig, COMPOSE_MAX_SITES};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::quantum::{expectation, state_distance, StateVector};
use crate::spacetime::Foliation;

use super::{check_state, echo_model, single_foliation, Bound, Cell, ExperimentReport};

pub const COEVOLVED_DRIFT_TOL: f64 = 1e-10;
pub const STATIC_TOL: f64 = 1e-13;
pub const MIN_PHYSICAL_VARIATION: f64 = 0.05;
pub const UNITARITY_TOL: f64 = 1e-10;
pub const LINEAR_SUPERPOSITION_TOL: f64 = 1e-12;
pub const MIN_SUPERPOSITION_DEFECT: f64 = 1e-3;

fn check_dense(config: &ModelConfig) -> Result<()> {
    if config.n_sites > COMPOSE_MAX_SITES {
        return Err(Error::TooLarge(format!(
            "needs the dense propagator: n_sites ≤ {COMPOSE_MAX_SITES}, got {}",
            config.n_sites
        )));
    }
    Ok(())
}

struct DegeneracyRun {
    coevolved_drift: f64,
    variation: f64,
    rows: Vec<Vec<Cell>>,
}

fn degeneracy_run(
    config: &ModelConfig,
    initial: &StateVector,
    probe: usize,
    foliation: &Foliation,
) -> Result<DegeneracyRun> {
    let ev = evolve_tracked(initial, foliation, config)?;
    let field0 = free_field(probe, 0, config);
    let reference = expectation(initial, &field0)?;

    // Running propagator U_t, one column per basis state.
    let n = config.n_sites;
    let dim = 1usize << n;
    let mut columns: Vec<StateVector> = (0..dim)
        .map(|k| StateVector::basis(n, k))
        .collect::<Result<_>>()?;

    let mut out = DegeneracyRun {
        coevolved_drift: 0.0,
        variation: 0.0,
        rows: Vec::with_capacity(ev.states.len()),
    };
    for (t, psi) in ev.states.iter().enumerate() {
        if t > 0 {
            let unitary = &ev.record.entries[t - 1].unitary;
            for col in columns.iter_mut() {
                unitary.apply_mut(col);
            }
        }
        // ⟨ψ_t| U_t O(x,0) U_t† |ψ_t⟩ = ⟨φ|O(x,0)|φ⟩ with φ = U_t† ψ_t.
        let pulled: Vec<C64> = columns
            .iter()
            .map(|col| {
                col.amplitudes()
                    .iter()
                    .zip(psi.amplitudes())
                    .map(|(u, a)| u.conj() * a)
                    .sum()
            })
            .collect();
        let phi = StateVector::normalized(pulled)?;
        let coevolved = expectation(&phi, &field0)?;
        let tau = ev.surfaces[t].height(probe);
        let physical = expectation(psi, &free_field(probe, tau, config))?;
        out.coevolved_drift = out.coevolved_drift.max((coevolved - reference).abs());
        out.variation = out.variation.max((physical - reference).abs());
        out.rows.push(vec![
            Cell::from(t),
            Cell::from(tau),
            Cell::from(coevolved),
            Cell::from(physical),
        ]);
    }
    Ok(out)
}

/// Compares the expectation of a field co-evolved with the full propagator
/// (constant by construction) against the interaction-picture expectation
/// on the current surface.
pub fn degeneracy_experiment(
    config: &ModelConfig,
    initial: &StateVector,
    probe: usize,
    foliation: Option<&Foliation>,
) -> Result<ExperimentReport> {
    config.validate()?;
    check_dense(config)?;
    check_state(config, initial)?;
    if probe >= config.n_sites {
        return Err(Error::SiteOutOfRange {
            site: probe,
            n_sites: config.n_sites,
        });
    }
    let foliation = single_foliation(config, foliation)?;
    let mut report = ExperimentReport::new("degeneracy_experiment");
    echo_model(&mut report, config);
    report.echo("probe_site", probe);
    report.foliation = Some(foliation.clone());

    let control = degeneracy_run(&config.with_lambda(0.0), initial, probe, &foliation)?;
    report.metric("control_coevolved_drift", control.coevolved_drift);
    report.expect("control_coevolved_drift", Bound::AtMost(COEVOLVED_DRIFT_TOL));
    report.expect("coevolved_drift", Bound::AtMost(COEVOLVED_DRIFT_TOL));
    let dynamic = [config.omega, config.mu, config.link_coupling, config.nonlinearity.lambda]
        .iter()
        .any(|&c| c != 0.0);
    if dynamic {
        report.expect(
            "interaction_picture_variation",
            Bound::AtLeast(MIN_PHYSICAL_VARIATION),
        );
    } else {
        report.expect("interaction_picture_variation", Bound::AtMost(STATIC_TOL));
    }
    if control.coevolved_drift > COEVOLVED_DRIFT_TOL {
        report
            .notes
            .push("λ = 0 control exceeded its bound; nonlinear metrics withheld".into());
        return Ok(report.finalize());
    }

    let run = degeneracy_run(config, initial, probe, &foliation)?;
    report.metric("coevolved_drift", run.coevolved_drift);
    report.metric("interaction_picture_variation", run.variation);
    report.columns = ["step", "probe_tau", "coevolved", "interaction_picture"]
        .map(String::from)
        .to_vec();
    report.rows = run.rows;
    Ok(report.finalize())
}

/// Default probe pair for [`map_nonlinearity_check`]: `|0…0⟩` and `|10…0⟩`.
pub fn default_probes(n_sites: usize) -> Result<(StateVector, StateVector)> {
    Ok((
        StateVector::zero(n_sites)?,
        StateVector::basis(n_sites, 1 << (n_sites - 1))?,
    ))
}

struct MapRun {
    unitarity_defect: f64,
    replay_defect: f64,
    superposition_defect: f64,
}

fn map_run(
    config: &ModelConfig,
    foliation: &Foliation,
    psi1: &StateVector,
    psi2: &StateVector,
) -> Result<MapRun> {
    let sum = |a: &StateVector, b: &StateVector| -> Result<StateVector> {
        StateVector::normalized(
            a.amplitudes()
                .iter()
                .zip(b.amplitudes())
                .map(|(x, y)| x + y)
                .collect(),
        )
    };
    let sup = sum(psi1, psi2)?;
    let (out_sup, record) = evolve(&sup, foliation, config)?;
    let u: CMatrix = compose_map(&record)?;
    let replayed = StateVector::normalized(u.apply(sup.amplitudes()))?;
    let (out1, _) = evolve(psi1, foliation, config)?;
    let (out2, _) = evolve(psi2, foliation, config)?;
    Ok(MapRun {
        unitarity_defect: u.unitarity_defect(),
        replay_defect: state_distance(&replayed, &out_sup)?,
        superposition_defect: state_distance(&out_sup, &sum(&out1, &out2)?)?,
    })
}

/// The composed per-step propagator is unitary while the state map breaks
/// superposition.
pub fn map_nonlinearity_check(
    config: &ModelConfig,
    probes: Option<(&StateVector, &StateVector)>,
    foliation: Option<&Foliation>,
) -> Result<ExperimentReport> {
    config.validate()?;
    check_dense(config)?;
    let defaults = default_probes(config.n_sites)?;
    let (psi1, psi2) = probes.unwrap_or((&defaults.0, &defaults.1));
    check_state(config, psi1)?;
    check_state(config, psi2)?;
    if psi1.inner(psi2)?.norm() > 1e-12 {
        return Err(Error::InvalidState("probe states must be orthogonal".into()));
    }
    let foliation = single_foliation(config, foliation)?;
    let mut report = ExperimentReport::new("map_nonlinearity_check");
    echo_model(&mut report, config);
    report.foliation = Some(foliation.clone());

    let control = map_run(&config.with_lambda(0.0), &foliation, psi1, psi2)?;
    report.metric("control_superposition_defect", control.superposition_defect);
    report.expect(
        "control_superposition_defect",
        Bound::AtMost(LINEAR_SUPERPOSITION_TOL),
    );
    report.expect("unitarity_defect", Bound::AtMost(UNITARITY_TOL));
    report.expect("replay_defect", Bound::AtMost(UNITARITY_TOL));
    let nonlinear = config.nonlinearity.lambda != 0.0
        && !matches!(config.nonlinearity.kind, crate::dynamics::NonlinearityKind::None);
    if nonlinear {
        report.expect(
            "superposition_defect",
            Bound::AtLeast(MIN_SUPERPOSITION_DEFECT),
        );
    } else {
        report.expect(
            "superposition_defect",
            Bound::AtMost(LINEAR_SUPERPOSITION_TOL),
        );
    }
    if control.superposition_defect > LINEAR_SUPERPOSITION_TOL {
        report
            .notes
            .push("λ = 0 control exceeded its bound; nonlinear metrics withheld".into());
        return Ok(report.finalize());
    }

    let run = map_run(config, &foliation, psi1, psi2)?;
    report.metric("unitarity_defect", run.unitarity_defect);
    report.metric("replay_defect", run.replay_defect);
    report.metric("superposition_defect", run.superposition_defect);
    report.columns = ["run", "unitarity_defect", "replay_defect", "superposition_defect"]
        .map(String::from)
        .to_vec();
    for (label, r) in [("control", &control), ("nonlinear", &run)] {
        report.rows.push(vec![
            Cell::from(label),
            Cell::from(r.unitarity_defect),
            Cell::from(r.replay_defect),
            Cell::from(r.superposition_defect),
        ]);
    }
    Ok(report.finalize())
}
