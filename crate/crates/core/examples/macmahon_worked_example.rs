//! The generalized MacMahon generating function for a 4x4 integer matrix.
//!
//! cargo run --example macmahon_worked_example [-- path/to/matrix.json]

use rq_algebra::comm::Truncation;
use rq_algebra::genmm::{cross_check, eval_f, ScalarMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/worked_example.json").into());
    let text = std::fs::read_to_string(&path)?;
    let a = ScalarMatrix::from_json(&text)?;
    let d = [1, -2, 2, -1];

    let f = eval_f(&a, &d)?;
    let plan = &f.plan;
    println!("M = {:?}, N = {:?}, delta = {}", plan.m_multiset, plan.n_tuple, plan.delta);
    for pp in plan.permutation_plans() {
        let sets: Vec<String> = pp.steps.iter().map(|s| format!("{:?}/{:?}", s.i_set, s.j_set)).collect();
        println!("  pi = {:?}: {}", pp.pi, sets.join("  "));
    }
    println!("D = {}", f.det);
    println!("F = {f}");

    let series = f.series(&Truncation::TotalDegree(5))?;
    for e in [[1, 0, 2, 0], [2, 0, 2, 0], [1, 1, 2, 0], [1, 0, 3, 0], [1, 0, 2, 1]] {
        println!("[x^{} y^{} z^{} w^{}] = {}", e[0], e[1], e[2], e[3], series.coefficient(&e));
    }
    let mismatches = cross_check(&a, &d, 6)?;
    println!("brute-force mismatches through degree 6: {}", mismatches.len());
    Ok(())
}
