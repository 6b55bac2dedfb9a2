//! Green's relations in Sing(V): the image/kernel rule against principal
//! ideals computed from the multiplication table.

use singcxn::semigroup::{green, idempotents, singular_endos, GreenOracle};
use singcxn::table::{endo_table, EndoProduct};
use singcxn::{Endo, Prime};

fn main() -> singcxn::Result<()> {
    let p = Prime::new(2)?;
    let sing = singular_endos(2, p)?;
    let table = endo_table(&sing, &EndoProduct::Plain)?;
    let oracle = GreenOracle::new(&table);

    let mut disagreements = 0;
    for (i, a) in sing.iter().enumerate() {
        for (j, b) in sing.iter().enumerate() {
            if green(a, b) != oracle.flags(i, j) {
                disagreements += 1;
            }
        }
    }
    println!("|Sing(GF(2)^2)| = {}, disagreements with the oracle: {disagreements}", sing.len());

    let a = Endo::parse("1,0;0,0", p)?;
    let b = Endo::parse("1,0;1,0", p)?;
    println!("{a} vs {b}: {:?}", green(&a, &b));

    let idem = idempotents(2, p, true)?;
    println!("{} singular idempotents:", idem.len());
    for e in &idem {
        println!("  {e}  kernel {}  image {}", e.kernel(), e.image());
    }
    println!("regular elements: {} of {}", table.regular_elements().len(), table.order());
    Ok(())
}
