//! The commutation property of (I - A)^{-1} and the Jacobi ratio theorem.
//!
//! cargo run --release --example jacobi_ratio

use rq_algebra::linalg::{subsets_of_size, verify_jacobi, verify_prop_jacobi1};
use rq_algebra::RelationSet;

fn main() -> rq_algebra::Result<()> {
    let rs = RelationSet::RightQuantum;
    let mut held = 0;
    let mut total = 0;
    for i in 1..=3 {
        for j in 1..=3 {
            for k in 1..=3 {
                for l in 1..=3 {
                    total += 1;
                    held += verify_prop_jacobi1(3, (i, j, k, l), 4, rs)?.holds() as usize;
                }
            }
        }
    }
    println!("commutation, m=3, degree<=4: {held}/{total}");

    for rows in subsets_of_size(3, 2) {
        for cols in subsets_of_size(3, 2) {
            let v = verify_jacobi(3, &rows, &cols, 4, rs)?;
            println!("I={rows:?} J={cols:?}: {}", if v.holds() { "holds" } else { "fails" });
        }
    }
    Ok(())
}
