//! Dimensions of the relation ideal by degree, and a few membership tests.
//!
//! cargo run --example ideal_membership

use rq_algebra::{equal_mod_ideal, ideal_contains, ideal_degree_basis, rational, NcSeries, RelationSet, Word};

fn series(m: usize, terms: &[(&str, i64)]) -> NcSeries {
    let mut s = NcSeries::zero(m, 4);
    for (w, c) in terms {
        s.add_term(w.parse::<Word>().unwrap(), rational(*c));
    }
    s
}

fn main() {
    for m in 2..=3 {
        for rs in [RelationSet::RightQuantum, RelationSet::CrossOnly] {
            let dims: Vec<String> = (0..=3)
                .map(|n| {
                    let b = ideal_degree_basis(m, rs, n);
                    format!("{}/{}", b.dimension(), b.ambient_dimension())
                })
                .collect();
            println!("m={m} {rs}: {}", dims.join(" "));
        }
    }

    // entries in one column commute
    let column = series(2, &[("a11a21", 1), ("a21a11", -1)]);
    println!("a11a21 - a21a11 in ideal: {}", ideal_contains(&column, RelationSet::RightQuantum));
    let rows = series(2, &[("a11a12", 1), ("a12a11", -1)]);
    println!("a11a12 - a12a11 in ideal: {}", ideal_contains(&rows, RelationSet::RightQuantum));

    let lhs = series(2, &[("a12a21a11", 1)]);
    let rhs = series(2, &[("a12a11a21", 1)]);
    println!("a12a21a11 == a12a11a21 mod ideal: {}", equal_mod_ideal(&lhs, &rhs, RelationSet::RightQuantum, 4));
}
