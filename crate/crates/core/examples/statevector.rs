//! Bell pair from gates, reduced states and entanglement entropy.

use nlts::linalg::pauli;
use nlts::quantum::{
    apply_on_link, apply_on_site, entanglement_entropy, reduced_density, trace_distance,
    SiteOperator, StateVector, TwoSiteOperator,
};

fn main() -> nlts::Result<()> {
    let zero = StateVector::zero(3)?;
    let h = apply_on_site(&zero, &SiteOperator::new(pauli::hadamard(), 0))?;
    let bell = apply_on_link(&h, &TwoSiteOperator::new(pauli::cnot(), (0, 1)))?;

    for (k, a) in bell.amplitudes().iter().enumerate() {
        if a.norm() > 0.0 {
            println!("|{k:03b}⟩  {a:.6}");
        }
    }
    println!("S([0])     = {:.6} (ln 2 = {:.6})", entanglement_entropy(&bell, &[0])?, 2f64.ln());
    println!("S([0, 1])  = {:.2e}", entanglement_entropy(&bell, &[0, 1])?);

    let rho0 = reduced_density(&bell, 0)?;
    let rho2 = reduced_density(&bell, 2)?;
    println!("ρ_0 = {:?}", rho0.matrix());
    println!("D(ρ_0, |0⟩⟨0|) = {:.6}", trace_distance(&rho0, &rho2));
    Ok(())
}
