//! Canonical series of the conic at a generic parameter, with exact
//! residuals.

use gkz::lattice::IntegerMatrix;
use gkz::number::{fmt_q, q, GQ, Q};
use gkz::series::MixedSeries;
use gkz::solver::{canonical_series, fake_exponents, residual};

fn show(s: &MixedSeries) {
    println!("x^{:?} * (", s.base);
    for ((u, d), c) in &s.terms {
        println!("    {c} x^{u:?} log^{d:?}");
    }
    println!(") + O(w·u > {})", fmt_q(&s.truncation));
}

fn main() -> gkz::error::Result<()> {
    let a = IntegerMatrix::new(vec![vec![1, 1, 1], vec![0, 1, 2]])?;
    let w: Vec<Q> = [1, 1, 3].into_iter().map(q).collect();
    let beta = vec![GQ::from_ratio(1, 2), GQ::from_ratio(1, 3)];

    for e in fake_exponents(&a, &beta, &w)? {
        println!("fake exponent {:?} from pair {:?}", e.alpha, e.source_pair);
    }
    let sols = canonical_series(&a, &beta, &w, &q(4))?;
    println!("{} solutions", sols.len());
    for s in &sols {
        show(s);
        println!("residual {}", fmt_q(&residual(s, &a, &beta)?));
    }
    Ok(())
}
