//! Turns an ordered word into a path sequence one adjacent swap at a time.
//!
//! cargo run --example foata_transform

use rq_algebra::sequences::{phi, phi_inverse, psi_orbit, rank};
use rq_algebra::{Permutation, Word};

fn main() -> rq_algebra::Result<()> {
    let w: Word = "a14a12a13a13a14a22a21a23a31a34a33a34a34a34a42a41a42a43a41a41a44".parse()?;
    let sigma: Permutation = "2341".parse()?;
    let image = phi(&w, &sigma)?;
    println!("w        = {w}");
    println!("phi(w)   = {image}");
    println!("inverse  = {}", phi_inverse(&image, &sigma)?);

    let small: Word = "a12a11a22".parse()?;
    let sigma: Permutation = "21".parse()?;
    let id = Permutation::identity(2);
    for step in psi_orbit(&small, &sigma)? {
        println!("rank {:>2}  {step}", rank(&step, &id));
    }
    Ok(())
}
