use crate::dynamics::{evolve_tracked, ModelConfig, NonlinearityKind};
use crate::error::{Error, Result};
use crate::quantum::{entanglement_entropy, StateVector};
use crate::spacetime::Foliation;

use super::{check_state, echo_model, single_foliation, Bound, Cell, ExperimentReport};

pub const PRODUCT_TOL: f64 = 1e-12;
pub const MIN_NONLOCAL_ENTROPY: f64 = 0.01;

/// Entanglement across `cut` during evolution from a product state with the
/// link gates switched off, for each nonlinearity kind. The nonlocal kinds
/// use a remote site on the far side of the cut.
pub fn entanglement_monitor(
    config: &ModelConfig,
    initial: &StateVector,
    cut: &[usize],
    foliation: Option<&Foliation>,
) -> Result<ExperimentReport> {
    config.validate()?;
    check_state(config, initial)?;
    if entanglement_entropy(initial, cut)? > PRODUCT_TOL {
        return Err(Error::InvalidState(
            "entanglement monitor needs a product initial state".into(),
        ));
    }
    let mut base = config.clone();
    base.link_coupling = 0.0;
    let foliation = single_foliation(&base, foliation)?;

    let remote = match config.nonlinearity.kind.remote_site() {
        Some(j) if !cut.contains(&j) => j,
        _ => (0..config.n_sites)
            .find(|s| !cut.contains(s))
            .ok_or_else(|| Error::InvalidCut("cut covers every site".into()))?,
    };

    let mut report = ExperimentReport::new("entanglement_monitor");
    echo_model(&mut report, &base);
    let cut_text: Vec<String> = cut.iter().map(|s| s.to_string()).collect();
    report.echo("cut", cut_text.join(" "));
    report.echo("remote_site", remote);
    report.foliation = Some(foliation.clone());

    let runs = [
        ("none", NonlinearityKind::None),
        ("local", NonlinearityKind::Local),
        (
            "coefficient_nonlocal",
            NonlinearityKind::CoefficientNonlocal { source: remote },
        ),
        (
            "operator_nonlocal",
            NonlinearityKind::OperatorNonlocal { partner: remote },
        ),
    ];
    let mut traces = Vec::with_capacity(runs.len());
    for (label, kind) in runs {
        let mut c = base.with_kind(kind);
        c.nonlinearity.restrict_to = None;
        let ev = evolve_tracked(initial, &foliation, &c)?;
        let entropies: Vec<f64> = ev
            .states
            .iter()
            .map(|s| entanglement_entropy(s, cut))
            .collect::<Result<_>>()?;
        let max = entropies.iter().copied().fold(0.0, f64::max);
        let metric = format!("max_entropy_{label}");
        report.metric(&metric, max);
        if label == "operator_nonlocal" {
            report.expect(&metric, Bound::AtLeast(MIN_NONLOCAL_ENTROPY));
        } else {
            report.expect(&metric, Bound::AtMost(PRODUCT_TOL));
        }
        traces.push(entropies);
        // `none` is the linear control.
        if label == "none" && max > PRODUCT_TOL {
            report
                .notes
                .push("linear control generated entanglement; remaining runs withheld".into());
            return Ok(report.finalize());
        }
    }

    report.columns = std::iter::once("step".to_string())
        .chain(runs.iter().map(|(label, _)| format!("entropy_{label}")))
        .collect();
    for step in 0..traces[0].len() {
        let mut row = vec![Cell::from(step)];
        row.extend(traces.iter().map(|t| Cell::from(t[step])));
        report.rows.push(row);
    }
    Ok(report.finalize())
}
