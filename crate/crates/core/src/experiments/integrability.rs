use std::collections::{HashSet, VecDeque};

use crate::dynamics::{ts_step, ModelConfig};
use crate::error::{Error, Result};
use crate::quantum::{state_distance, StateVector};
use crate::spacetime::{Deformation, Hypersurface};

use super::{
    check_state, echo_model, fmt_real, Bound, Cell, Expectation, ExperimentReport,
    COVARIANT_SWAP_TOL, LINEAR_SWAP_TOL, VIOLATION_MIN,
};

/// Surface, state and enabled pair that produced the largest residue.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapWitness {
    pub surface: Hypersurface,
    pub first: Deformation,
    pub second: Deformation,
    pub residue: f64,
}

struct SwapScan {
    max_residue: f64,
    witness: Option<SwapWitness>,
    surfaces: usize,
    pairs: usize,
    exhaustive: bool,
    diamond_failures: usize,
}

/// Breadth-first scan of reachable surfaces. Each surface carries the state
/// reached along its discovery path; every enabled pair is applied in both
/// orders, the second coefficient being recomputed after the first step.
fn scan(config: &ModelConfig, initial: &StateVector, budget: usize) -> Result<SwapScan> {
    let start = Hypersurface::flat(config.n_sites, config.horizon)?;
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, initial.clone())]);
    let mut out = SwapScan {
        max_residue: 0.0,
        witness: None,
        surfaces: 0,
        pairs: 0,
        exhaustive: true,
        diamond_failures: 0,
    };
    while let Some((surface, state)) = queue.pop_front() {
        if out.surfaces >= budget {
            out.exhaustive = false;
            break;
        }
        out.surfaces += 1;
        let enabled = surface.enabled_deformations();
        let mut successors = Vec::with_capacity(enabled.len());
        for d in &enabled {
            successors.push(ts_step(&state, &surface, d, config)?);
        }
        for a in 0..enabled.len() {
            for b in a + 1..enabled.len() {
                let (s_a, surf_a, _) = &successors[a];
                let (s_b, surf_b, _) = &successors[b];
                let (ab, surf_ab, _) = ts_step(s_a, surf_a, &enabled[b], config)?;
                let (ba, surf_ba, _) = ts_step(s_b, surf_b, &enabled[a], config)?;
                if surf_ab != surf_ba {
                    out.diamond_failures += 1;
                }
                let residue = state_distance(&ab, &ba)?;
                out.pairs += 1;
                if residue > out.max_residue || out.witness.is_none() {
                    out.max_residue = out.max_residue.max(residue);
                    out.witness = Some(SwapWitness {
                        surface: surface.clone(),
                        first: enabled[a],
                        second: enabled[b],
                        residue,
                    });
                }
            }
        }
        for (state, next, _) in successors {
            if seen.insert(next.clone()) {
                queue.push_back((next, state));
            }
        }
    }
    if !queue.is_empty() {
        out.exhaustive = false;
    }
    Ok(out)
}

/// Discrete integrability: order-swap residues of simultaneously enabled
/// deformations over reachable surfaces (exhaustive when the budget allows).
pub fn integrability_check(
    config: &ModelConfig,
    initial: &StateVector,
    exploration_budget: usize,
    expectation: Expectation,
) -> Result<ExperimentReport> {
    config.validate()?;
    check_state(config, initial)?;
    if exploration_budget == 0 {
        return Err(Error::TooLarge("exploration budget must be positive".into()));
    }
    let mut report = ExperimentReport::new("integrability_check");
    echo_model(&mut report, config);
    report.echo("exploration_budget", exploration_budget);
    let expect = expectation.resolve(&config.nonlinearity.kind);
    report.echo("expectation", expect.name());

    let control = scan(&config.with_lambda(0.0), initial, exploration_budget)?;
    report.metric("control_max_swap_residue", control.max_residue);
    report.expect("control_max_swap_residue", Bound::AtMost(LINEAR_SWAP_TOL));
    if control.max_residue > LINEAR_SWAP_TOL {
        report
            .notes
            .push("λ = 0 control exceeded its bound; nonlinear metric withheld".into());
        report.expect("max_swap_residue", Bound::AtMost(COVARIANT_SWAP_TOL));
        return Ok(report.finalize());
    }

    let run = scan(config, initial, exploration_budget)?;
    report.metric("max_swap_residue", run.max_residue);
    report.metric("surfaces_visited", run.surfaces as f64);
    report.metric("pairs_checked", run.pairs as f64);
    report.metric("exhaustive", if run.exhaustive { 1.0 } else { 0.0 });
    report.metric("diamond_failures", run.diamond_failures as f64);
    report.expect("diamond_failures", Bound::AtMost(0.0));
    match expect {
        Expectation::Violation => report.expect("max_swap_residue", Bound::AtLeast(VIOLATION_MIN)),
        _ => {
            let tol = if config.nonlinearity.lambda == 0.0
                || matches!(config.nonlinearity.kind, crate::dynamics::NonlinearityKind::None)
            {
                LINEAR_SWAP_TOL
            } else {
                COVARIANT_SWAP_TOL
            };
            report.expect("max_swap_residue", Bound::AtMost(tol))
        }
    }

    report.columns = ["heights", "gates", "first", "second", "residue"]
        .map(String::from)
        .to_vec();
    if let Some(w) = run.witness {
        let heights: Vec<String> = w.surface.heights().iter().map(|h| h.to_string()).collect();
        let gates: Vec<String> = w
            .surface
            .applied_gates()
            .iter()
            .map(|(l, t)| format!("{l}:{t}"))
            .collect();
        report.rows.push(vec![
            Cell::from(heights.join(" ")),
            Cell::from(gates.join(" ")),
            Cell::from(w.first.to_string()),
            Cell::from(w.second.to_string()),
            Cell::from(w.residue),
        ]);
        report.notes.push(format!(
            "witness: swap of `{}` and `{}` gives residue {}",
            w.first,
            w.second,
            fmt_real(w.residue)
        ));
    }
    Ok(report.finalize())
}
