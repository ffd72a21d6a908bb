//! Each step is unitary, yet the state map is not linear.

use nlts::dynamics::ModelConfig;
use nlts::experiments::map_nonlinearity_check;

fn main() -> nlts::Result<()> {
    let config = ModelConfig::default();
    for lambda in [0.0, 0.05, 0.5] {
        let r = map_nonlinearity_check(&config.with_lambda(lambda), None, None)?;
        println!(
            "λ = {lambda:<4} unitarity defect {:.1e}  superposition defect {:.3e}",
            r.get("unitarity_defect").unwrap_or(f64::NAN),
            r.get("superposition_defect").unwrap_or(f64::NAN),
        );
    }
    Ok(())
}
