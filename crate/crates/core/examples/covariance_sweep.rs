//! Final state over many foliations: local nonlinearity stays covariant,
//! the nonlocal kinds do not.

use nlts::dynamics::{ModelConfig, NonlinearityKind};
use nlts::experiments::{foliation_sweep, Expectation, InitialState};

fn main() -> nlts::Result<()> {
    let base = ModelConfig::default();
    let psi = InitialState::Tilted.build(base.n_sites)?;
    let last = base.n_sites - 1;
    for kind in [
        NonlinearityKind::None,
        NonlinearityKind::Local,
        NonlinearityKind::CoefficientNonlocal { source: last },
        NonlinearityKind::OperatorNonlocal { partner: last },
    ] {
        let config = base.with_kind(kind);
        let report = foliation_sweep(&config, &psi, 50, 42, &[], Expectation::Auto)?;
        println!(
            "{:>22}: max pairwise distance {:.3e} ({})",
            kind.name(),
            report.get("max_pairwise_distance").unwrap_or(f64::NAN),
            report.verdict.as_str()
        );
    }
    Ok(())
}
