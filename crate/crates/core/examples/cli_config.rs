//! Driving the batch front end from code: parse a config, run, inspect.

use nlts::cli::{parse_config, run_experiment, Experiment};

fn main() -> nlts::Result<()> {
    let config = parse_config(
        r#"
        n_sites = 5
        horizon = 3
        kind = "coefficient_nonlocal"
        nonlocal_site = 4
        n_foliations = 20
        expect = "violation"
        "#,
    )?;
    let report = run_experiment(&config, Experiment::Sweep)?;
    print!("{}", report.to_structured());
    Ok(())
}
