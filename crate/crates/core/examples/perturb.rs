//! Moving one exponent of the resonant logarithmic Gauss series off the
//! resonance and watching the coefficients vary rationally.

use gkz::lattice::IntegerMatrix;
use gkz::number::{fmt_q, q, qr, GQ, Q};
use gkz::solver::{canonical_series, perturb_exponent, residual};

fn main() -> gkz::error::Result<()> {
    let a_mat = IntegerMatrix::new(vec![vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]])?;
    let w: Vec<Q> = [1, 1, 1, 2].into_iter().map(q).collect();
    let (a, b, c) = (qr(1, 2), qr(1, 3), q(1));
    let beta: Vec<GQ> = [&c - q(1) - &a - &b, -b.clone(), -a.clone()].into_iter().map(GQ::real).collect();
    let sols = canonical_series(&a_mat, &beta, &w, &q(4))?;
    let s = sols.iter().find(|s| s.max_log_degree() == 1).expect("a logarithmic series");
    println!("start exponent {:?}", s.base);

    for k in [0, 7, 11, 13] {
        let eps = if k == 0 { GQ::from_int(0) } else { GQ::from_ratio(1, k) };
        let target = &s.base[1] + &eps;
        let p = perturb_exponent(&a_mat, s, 1, &target)?;
        let beta_p: Vec<GQ> = a_mat
            .rows()
            .iter()
            .map(|row| row.iter().zip(&p.base).fold(GQ::from_int(0), |acc, (&r, e)| &acc + &(e * &GQ::from_int(r))))
            .collect();
        println!(
            "alpha_1 + {eps}: {} terms, log degree {}, residual {}",
            p.terms.len(),
            p.max_log_degree(),
            fmt_q(&residual(&p, &a_mat, &beta_p)?),
        );
    }
    Ok(())
}
