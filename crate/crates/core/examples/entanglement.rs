//! With link gates off, only the operator-valued nonlocal term entangles.

use nlts::dynamics::ModelConfig;
use nlts::experiments::{entanglement_monitor, InitialState};

fn main() -> nlts::Result<()> {
    let config = ModelConfig::default();
    let psi = InitialState::Tilted.build(config.n_sites)?;
    for cut in [vec![0], vec![0, 1, 2], vec![2, 3]] {
        let r = entanglement_monitor(&config, &psi, &cut, None)?;
        let line: Vec<String> = r
            .metrics
            .iter()
            .map(|(k, v)| format!("{}={v:.2e}", k.trim_start_matches("max_entropy_")))
            .collect();
        println!("cut {cut:?}: {}", line.join("  "));
    }
    Ok(())
}
