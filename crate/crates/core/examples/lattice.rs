//! Subspaces of GF(2)^3 and GF(3)^2, their counts and annihilators.

use singcxn::subspace::{enumerate_subspaces_on, gaussian_binomial};
use singcxn::{Prime, Side, SubspaceFilter};

fn main() -> singcxn::Result<()> {
    let p = Prime::new(2)?;
    let all = enumerate_subspaces_on(3, p, Side::Primal, SubspaceFilter::All)?;
    println!("GF(2)^3 has {} subspaces", all.len());
    for k in 0..=3 {
        println!("  dimension {k}: {}", gaussian_binomial(3, k, 2));
    }

    for a in all.iter().filter(|a| a.dim() == 1) {
        let ann = a.annihilator();
        println!("{a} -> annihilator {ann} (dim {}), back to {}", ann.dim(), ann.annihilator());
    }

    let q = Prime::new(3)?;
    let lines = enumerate_subspaces_on(2, q, Side::Primal, SubspaceFilter::Proper)?;
    let line = &lines[1];
    let comps = line.all_complements()?;
    println!("{line} in GF(3)^2 has {} complements, canonical one {}", comps.len(), line.canonical_complement());
    Ok(())
}
