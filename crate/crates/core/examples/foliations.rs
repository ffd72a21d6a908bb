//! Brickwork hypersurfaces: counting, canonical and random foliations, and
//! the replay file format.

use nlts::spacetime::{
    canonical_foliation, count_foliations, foliation_length, gate_count, initial_surface,
    random_foliation, CanonicalKind, Foliation,
};

fn main() -> nlts::Result<()> {
    let (n, t) = (4, 2);
    println!("N={n} T={t}: {} gates, {} steps per foliation", gate_count(n, t), foliation_length(n, t));

    let s = initial_surface(n, t)?;
    let enabled: Vec<String> = s.enabled_deformations().iter().map(|d| d.to_string()).collect();
    println!("enabled on the initial surface: {}", enabled.join(", "));

    for (n, t) in [(2, 1), (2, 2), (3, 2), (4, 2), (4, 3)] {
        println!("count_foliations({n}, {t}) = {}", count_foliations(n, t)?);
    }

    let stair = canonical_foliation(n, t, CanonicalKind::Staircase)?;
    println!("staircase:\n{}", stair.serialize());

    let random = random_foliation(n, t, 7)?;
    let text = random.serialize();
    let back = Foliation::parse(&text, n, t)?;
    assert_eq!(back.steps, random.steps);
    println!("random (seed 7) round-trips through {} lines", text.lines().count());
    Ok(())
}
