//! The cross-connection induced by an automorphism of GF(3)^2: both
//! functors, the axioms, the duality χ and the semigroup of linked pairs.

use singcxn::crossconn::{chi_and_semigroup, check_crossconnection, gamma_delta_theta, recover_theta, SubspaceFunctor};
use singcxn::{Endo, Prime};

fn main() -> singcxn::Result<()> {
    let p = Prime::new(3)?;
    let theta = Endo::parse("1,1;0,2", p)?;
    let (gamma, delta) = gamma_delta_theta(&theta)?;

    for y in gamma.source() {
        println!("Γ({y}) = {}", gamma.object(y)?);
    }
    let check = check_crossconnection(&gamma)?;
    println!("Γ is a cross-connection: {}", check.failure.is_none());
    for (x, d) in check.witnesses.iter().take(3) {
        println!("  {x} is covered by {d}");
    }

    let linked = chi_and_semigroup(&theta)?;
    println!(
        "{} linked pairs, χ natural {}, isomorphic to Sing(V) {}",
        linked.pairs.len(),
        linked.natural,
        linked.isomorphism.is_some()
    );
    println!("recovered from Δ: {}", recover_theta(&delta)?);
    Ok(())
}
