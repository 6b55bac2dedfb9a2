//! Normal cones of the subspace category of GF(2)^2: factorization, the
//! principal cone of a map, brute-force census and cone composition.

use singcxn::cones::{normal_factorization, SubspaceCategory};
use singcxn::semigroup::singular_endos;
use singcxn::table::{endo_table, find_isomorphism, EndoProduct};
use singcxn::{Endo, Morphism, Prime, Side, Subspace};

fn main() -> singcxn::Result<()> {
    let p = Prime::new(2)?;
    let cat = SubspaceCategory::new(2, p, Side::Primal)?;

    let alpha = Endo::parse("1,1;0,0", p)?;
    let v = Subspace::full(2, p, Side::Primal);
    let f = Morphism::restrict(alpha.mat(), &v, &v)?;
    let fac = normal_factorization(&f)?;
    println!("{f} = {} ; {} ; {}", fac.q, fac.u, fac.j);

    let cone = cat.principal(alpha.mat())?;
    println!("principal cone of {alpha}: vertex {}", cone.vertex());
    for c in cone.components() {
        println!("  at {}: {c}", c.dom());
    }
    println!("M-set: {:?}", cat.m_set(&cone).iter().map(|a| a.to_string()).collect::<Vec<_>>());
    println!("back to a map: {}", cat.cone_to_map(&cone)?);

    let census = cat.census()?;
    println!("census: {} normal cones", census.len());

    let sing = singular_endos(2, p)?;
    let mats: Vec<_> = sing.iter().map(|a| a.mat().clone()).collect();
    let cones = cat.cone_table(&mats)?;
    let plain = endo_table(&sing, &EndoProduct::Plain)?;
    println!("cone semigroup isomorphic to Sing(V): {}", find_isomorphism(&cones, &plain).is_some());
    Ok(())
}
