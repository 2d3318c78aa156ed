//! Checks that ordered and path sums agree modulo the right-quantum ideal, and
//! that they do not in the free algebra.
//!
//! cargo run --release --example main_theorem

use rq_algebra::suites::{main1_instances, run_main1, sample_sigmas};
use rq_algebra::{Main1Part, RelationSet};

fn main() -> rq_algebra::Result<()> {
    for m in 1..=3 {
        let sigmas = sample_sigmas(m);
        for part in [Main1Part::Part1, Main1Part::Part2] {
            let instances = main1_instances(m, 3, part, &sigmas);
            let checks = run_main1(&instances, None)?;
            let free = run_main1(&instances, Some(RelationSet::Free))?;
            println!(
                "m={m} {part:?}: {}/{} hold; {} fail without relations",
                checks.iter().filter(|c| c.passed).count(),
                checks.len(),
                free.iter().filter(|c| !c.passed).count(),
            );
        }
    }
    Ok(())
}
