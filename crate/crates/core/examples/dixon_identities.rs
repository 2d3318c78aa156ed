//! Alternating sums of cubed binomials against their closed forms.
//!
//! cargo run --example dixon_identities

use rq_algebra::genmm::{dixon_s, dixon_sk};

fn main() {
    for n in 0..=10 {
        let s = dixon_s(n);
        println!("S({n}) = {}  closed form {}  {}", s.brute, s.closed_form, if s.agrees() { "ok" } else { "DIFFER" });
    }
    for k in 1..=2 {
        for n in (2 * k..=8).step_by(2) {
            let s = dixon_sk(n, k);
            let double = s.double_sum.as_ref().map_or("-".to_string(), |v| v.to_string());
            println!("S_{k}({n}) = {}  factorial ratio {}  double sum {double}", s.brute, s.factorial_ratio);
        }
    }
}
