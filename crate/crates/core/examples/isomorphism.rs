//! Table isomorphism search: Sing(GF(2)^3) against its opposite, and two
//! small semigroups that are not isomorphic.

use std::time::Instant;

use singcxn::semigroup::singular_endos;
use singcxn::table::{endo_table, find_isomorphism, EndoProduct};
use singcxn::{Prime, SemigroupTable};

fn main() -> singcxn::Result<()> {
    let sing = singular_endos(3, Prime::new(2)?)?;
    let table = endo_table(&sing, &EndoProduct::Plain)?;
    let start = Instant::now();
    let map = find_isomorphism(&table, &table.opposite());
    println!("Sing(GF(2)^3) ≅ its opposite: {} ({} elements, {:?})", map.is_some(), table.order(), start.elapsed());

    // left-zero and right-zero semigroups of order 3
    let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
    let left = SemigroupTable::from_cells(labels.clone(), (0..9).map(|c| (c / 3) as u16).collect())?;
    let right = SemigroupTable::from_cells(labels, (0..9).map(|c| (c % 3) as u16).collect())?;
    println!("left zero ≅ right zero: {}", find_isomorphism(&left, &right).is_some());
    println!("left zero ≅ opposite of right zero: {}", find_isomorphism(&left, &right.opposite()).is_some());
    Ok(())
}
