//! Order-swap residues over every reachable surface of a small lattice.

use nlts::dynamics::{ModelConfig, NonlinearityKind};
use nlts::experiments::{integrability_check, Expectation, InitialState};

fn main() -> nlts::Result<()> {
    let config = ModelConfig { n_sites: 4, horizon: 3, ..ModelConfig::default() };
    let psi = InitialState::Tilted.build(4)?;

    let local = integrability_check(&config, &psi, 100_000, Expectation::Auto)?;
    println!("{}", local.summary());

    let nonlocal = config.with_kind(NonlinearityKind::CoefficientNonlocal { source: 3 });
    let report = integrability_check(&nonlocal, &psi, 100_000, Expectation::Auto)?;
    println!("{}", report.summary());
    for note in &report.notes {
        println!("  {note}");
    }
    Ok(())
}
