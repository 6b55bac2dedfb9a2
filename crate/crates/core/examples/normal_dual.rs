//! The normal dual of the subspace category: H-functors keyed by null
//! spaces, their images under P, and the cone semigroup of the annihilator
//! category compared with Sing(V)^op.

use singcxn::dual::{annihilator_cone_table, build_normal_dual, h_set, HFunctor};
use singcxn::semigroup::singular_endos;
use singcxn::table::{endo_table, find_isomorphism, EndoProduct};
use singcxn::{Endo, Prime, Side, Subspace};

fn main() -> singcxn::Result<()> {
    let p = Prime::new(2)?;
    let e = Endo::parse("1,0;0,0", p)?;
    let h = HFunctor::from_idempotent(&e)?;
    println!("H({e};-) has key {} and P gives {}", h.key(), h.annihilator());

    let sing = singular_endos(2, p)?;
    let v = Subspace::full(2, p, Side::Primal);
    let set: Vec<String> = h_set(&e, &v, &sing)?.iter().map(|a| a.to_string()).collect();
    println!("H({e};V) = {set:?}");

    let nd = build_normal_dual(2, p)?;
    println!("{} H-functors, P injective {}, onto proper subspaces of V* {}", nd.functors.len(), nd.p_injective, nd.p_onto_proper_dual);
    println!("inclusions match {}, faithful {}, full {}", nd.inclusions_match, nd.faithful, nd.full);

    let dual = annihilator_cone_table(2, p)?;
    let opposite = endo_table(&sing, &EndoProduct::Plain)?.opposite();
    println!("annihilator cones isomorphic to Sing(V)^op: {}", find_isomorphism(&dual, &opposite).is_some());
    Ok(())
}
