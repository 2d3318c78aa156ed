//! Lists the ordered and back-ordered words of a type and counts the other classes.
//!
//! cargo run --example enumerate_sequences

use rq_algebra::sequences::{class_cardinality, enumerate_class};
use rq_algebra::{Permutation, SequenceClass, SequenceClassQuery};

fn main() -> rq_algebra::Result<()> {
    let ordered = SequenceClassQuery::new(vec![2, 1, 1], vec![0, 3, 1], "231".parse()?, SequenceClass::Ordered);
    println!("ordered, type (2,1,1;0,3,1), pi = 231:");
    for w in enumerate_class(&ordered)? {
        println!("  {w}");
    }

    let back = SequenceClassQuery::new(vec![2, 2, 0], vec![1, 2, 1], "132".parse()?, SequenceClass::BackOrdered);
    println!("back-ordered, type (2,2,0;1,2,1), pi = 132:");
    for w in enumerate_class(&back)? {
        println!("  {w}");
    }

    // path and ordered classes have the same size for every sigma
    let (p, r) = (vec![2, 1, 2], vec![1, 2, 2]);
    for sigma in Permutation::all(3) {
        let count = |class| class_cardinality(&SequenceClassQuery::new(p.clone(), r.clone(), sigma.clone(), class));
        println!(
            "sigma = {sigma}: ordered {} path {} back-ordered {} back-path {}",
            count(SequenceClass::Ordered)?,
            count(SequenceClass::Path)?,
            count(SequenceClass::BackOrdered)?,
            count(SequenceClass::BackPath)?,
        );
    }
    Ok(())
}
