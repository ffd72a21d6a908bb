//! Remote measurement choice becomes visible at Bob's site once his
//! evolution is nonlinear.

use nlts::dynamics::ModelConfig;
use nlts::experiments::{signaling_experiment, MeasurementSetting};

fn main() -> nlts::Result<()> {
    let config = ModelConfig::default();
    let settings = [MeasurementSetting::Z, MeasurementSetting::X];
    for lambda in [0.0, 0.1, 0.5, 1.0] {
        let report = signaling_experiment(&config.with_lambda(lambda), 0, 5, settings, None)?;
        println!(
            "λ = {lambda:<4} signal {:.3e}  (linear control {:.1e}, product control {:.1e})",
            report.get("signal").unwrap_or(f64::NAN),
            report.get("control_signal_linear").unwrap_or(f64::NAN),
            report.get("control_signal_product").unwrap_or(f64::NAN),
        );
    }
    print!("{}", signaling_experiment(&config, 0, 5, settings, None)?.to_rows());
    Ok(())
}
