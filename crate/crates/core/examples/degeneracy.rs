//! A field co-evolved with the full propagator has a frozen expectation,
//! while the interaction-picture expectation moves.

use nlts::dynamics::ModelConfig;
use nlts::experiments::{degeneracy_experiment, Cell, InitialState};

fn main() -> nlts::Result<()> {
    let config = ModelConfig::default();
    let psi = InitialState::Tilted.build(config.n_sites)?;
    let report = degeneracy_experiment(&config, &psi, 3, None)?;
    println!("{}", report.summary());
    println!("{:>4} {:>3} {:>12} {:>12}", "step", "τ", "co-evolved", "physical");
    for row in &report.rows {
        if let [Cell::Int(step), Cell::Int(tau), Cell::Real(co), Cell::Real(phys)] = row.as_slice() {
            println!("{step:>4} {tau:>3} {co:>12.9} {phys:>12.9}");
        }
    }
    Ok(())
}
