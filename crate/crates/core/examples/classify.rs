//! Every cross-connection of the plane over GF(2) and GF(3), found by trying
//! all inclusion-preserving bijections of the proper subspaces.

use singcxn::crossconn::classify_crossconnections;
use singcxn::Prime;

fn main() -> singcxn::Result<()> {
    for p in [2, 3] {
        let c = classify_crossconnections(2, Prime::new(p)?)?;
        println!(
            "GF({p})^2: {} bijections tried, {} cross-connections, |GL| = {}, distinct induced functors {}",
            c.bijections_tried,
            c.members.len(),
            c.gl_order,
            c.distinct_induced
        );
        for m in c.members.iter().take(6) {
            println!("  θ = {}  all axioms {}", m.theta, m.all_pass());
        }
    }
    Ok(())
}
