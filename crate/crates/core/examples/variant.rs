//! The variant of T_V with sandwich element θ = [[1,0],[0,0]] over GF(2):
//! regular elements, the map α ↦ (θα, αθ), and carrier elements that are
//! not principal.

use singcxn::variant::VariantContext;
use singcxn::{Endo, Prime};

fn main() -> singcxn::Result<()> {
    let p = Prime::new(2)?;
    let theta = Endo::parse("1,0;0,0", p)?;
    let ctx = VariantContext::new(&theta)?;

    let reg = ctx.reg_variant();
    println!("{} regular elements under α*β = αθβ:", reg.len());
    for (a, w) in &reg {
        let pair = ctx.phi(a);
        println!("  {a}  inverse-witness {w}  φ = ({}, {})", pair.first, pair.second);
    }

    let v = ctx.variant_crossconnection()?;
    println!("Reg closed {}, φ injective {}, φ(Reg) isomorphic {}", v.reg_closed, v.phi_injective, v.isomorphism.is_some());
    println!("Δ: {}", v.delta_failure.map_or("local isomorphism".into(), |f| f.to_string()));
    println!("Γ: {}", v.gamma_failure.map_or("local isomorphism".into(), |f| f.to_string()));

    let np = ctx.nonprincipal_cones();
    println!("image-side carrier {} elements, non-principal: {:?}", np.image_side.carrier_size, np.image_side.excess.iter().map(|e| e.to_string()).collect::<Vec<_>>());
    println!("kernel-side carrier {} elements, non-principal: {:?}", np.kernel_side.carrier_size, np.kernel_side.excess.iter().map(|e| e.to_string()).collect::<Vec<_>>());
    Ok(())
}
