//! Entries of (I - A)^{-1} as ratios of minors, checked degree by degree.
//!
//! cargo run --release --example matrix_inverse

use rq_algebra::linalg::{identity_minus_generic, minor, neumann_entry, verify_matrix_inverse};
use rq_algebra::RelationSet;

fn main() -> rq_algebra::Result<()> {
    let b = identity_minus_generic(2, 2);
    println!("det(I-A) minor for (1,2): {}", minor(&b, &[2], &[1])?);
    println!("[(I-A)^-1]_12 through degree 2: {}", neumann_entry(2, 1, 2, 2)?);

    for m in 1..=3 {
        for i in 1..=m {
            for j in 1..=m {
                let v = verify_matrix_inverse(m, i, j, 4, RelationSet::RightQuantum)?;
                let terms: Vec<String> = v.residues.iter().map(|r| r.terms.to_string()).collect();
                println!("m={m} ({i},{j}): holds={} residue terms by degree [{}]", v.holds(), terms.join(","));
            }
        }
    }
    let free = verify_matrix_inverse(2, 1, 2, 2, RelationSet::Free)?;
    println!("free algebra, m=2 (1,2): holds={}", free.holds());
    Ok(())
}
