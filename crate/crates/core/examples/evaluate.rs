//! Numeric evaluation of a Gauss series, plain and Gamma-normalized, with the
//! last-shell convergence check.

use gkz::error::Error;
use gkz::lattice::IntegerMatrix;
use gkz::number::{q, qr, GQ, Q};
use gkz::solver::{canonical_series, evaluate, EvalMode};
use num_complex::Complex64;

fn main() -> gkz::error::Result<()> {
    let a_mat = IntegerMatrix::new(vec![vec![1, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 1, 0, 1]])?;
    let w: Vec<Q> = [1, 1, 1, 2].into_iter().map(q).collect();
    let (a, b, c) = (qr(1, 2), qr(1, 3), qr(3, 4));
    let beta: Vec<GQ> = [&c - q(1) - &a - &b, -b.clone(), -a.clone()].into_iter().map(GQ::real).collect();
    let sols = canonical_series(&a_mat, &beta, &w, &q(40))?;

    // z = x0 x3 / (x1 x2) = 0.1
    let x: Vec<Complex64> = [1.0, 1.0, 1.0, 0.1].into_iter().map(|r| Complex64::new(r, 0.0)).collect();
    for s in &sols {
        for mode in [EvalMode::Plain, EvalMode::GammaNormalized] {
            match evaluate(s, &x, mode, 1e-12) {
                Ok(e) => println!("{mode:?}: {} (last shell {:.2e})", e.value, e.last_shell),
                Err(Error::ConvergenceWarning { re, im, last_shell, .. }) => {
                    println!("{mode:?}: {re} + {im}i, not converged (last shell {last_shell:.2e})")
                }
                Err(e) => return Err(e),
            }
        }
    }

    // the truncation is too short for z = 0.9
    let x: Vec<Complex64> = [1.0, 1.0, 1.0, 0.9].into_iter().map(|r| Complex64::new(r, 0.0)).collect();
    if let Err(e) = evaluate(&sols[0], &x, EvalMode::Plain, 1e-12) {
        println!("z = 0.9: {e}");
    }
    Ok(())
}
