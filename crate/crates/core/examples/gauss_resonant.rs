//! The resonant Gauss case `c = 1`: one power series and one logarithmic
//! series, rewritten in `z = x_0 x_3 / (x_1 x_2)`.

use gkz::horn::dehomogenize;
use gkz::lattice::{IntegerMatrix, KernelBasis};
use gkz::number::{fmt_q, q, qr, GQ, Q};
use gkz::solver::{canonical_series, residual};

fn main() -> gkz::error::Result<()> {
    let a_mat = IntegerMatrix::new(vec![vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]])?;
    let w: Vec<Q> = [1, 1, 1, 2].into_iter().map(q).collect();
    let (a, b, c) = (qr(1, 2), qr(1, 3), q(1));
    let beta: Vec<GQ> = [&c - q(1) - &a - &b, -b.clone(), -a.clone()].into_iter().map(GQ::real).collect();
    let z = KernelBasis { n: 4, columns: vec![vec![1, -1, -1, 1]] };

    for s in canonical_series(&a_mat, &beta, &w, &q(6))? {
        println!("start x^{:?}, log degree {}, residual {}", s.base, s.max_log_degree(), fmt_q(&residual(&s, &a_mat, &beta)?));
        let f = dehomogenize(&s, &z)?;
        for ((n, d), coeff) in &f.terms {
            println!("    {coeff} z^{} log(z)^{}", n[0], d[0]);
        }
    }
    Ok(())
}
