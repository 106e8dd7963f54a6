//! Horn series of the twisted cubic: recurrence polynomials, coefficients
//! and pole detection.

use gkz::horn::{horn_coefficient, horn_polynomials, horn_series, HornSystem};
use gkz::lattice::{kernel_lattice_basis, IntegerMatrix};
use gkz::number::{q, GQ};

fn main() -> gkz::error::Result<()> {
    let a = IntegerMatrix::new(vec![vec![1, 1, 1, 1], vec![0, 1, 2, 3]])?;
    let b = kernel_lattice_basis(&a);
    println!("kernel basis: {:?}", b.columns);
    let r = GQ::from_ratio;
    let h = HornSystem::new(b.clone(), vec![r(1, 3), r(-2, 7), r(3, 5), r(1, 9)])?;

    for k in 0..h.m() {
        let (p, qk) = horn_polynomials(&h, k);
        let show = |v: &[gkz::horn::LinearFactor]| {
            v.iter().map(|f| format!("(B_{}·mu + ({}))", f.j, f.constant())).collect::<Vec<_>>().join("")
        };
        println!("k = {k}: P = {}, Q = {}", show(&p), show(&qk));
    }
    for mu in [[0, 0], [1, 0], [0, 1], [2, 1]] {
        println!("R_{mu:?} = {}", horn_coefficient(&h, &mu)?);
    }
    println!("{} terms up to weight 3", horn_series(&h, &q(3))?.terms.len());

    // alpha_2 = 5 makes a factor of Q vanish on the support
    let bad = HornSystem::new(b, vec![r(1, 3), r(-2, 7), GQ::from_int(5), r(1, 9)])?;
    match horn_series(&bad, &q(3)) {
        Ok(s) => println!("no pole, {} terms", s.terms.len()),
        Err(e) => println!("{e}"),
    }
    Ok(())
}
