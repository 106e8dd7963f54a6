//! Homogenizing the confluent configuration `A = [1 2]` and restricting the
//! series of `rho(A)` to `x_0 = 1`.

use gkz::homogenize::{face_invariants_preserved, homogenize_matrix, homogenize_parameter, rank_upper_bound, restrict_x0};
use gkz::lattice::{combinations, IntegerMatrix};
use gkz::number::{fmt_q, q, qr, GQ};
use gkz::solver::{canonical_series, residual};

fn main() -> gkz::error::Result<()> {
    let a = IntegerMatrix::new(vec![vec![1, 2]])?;
    let h = homogenize_matrix(&a);
    println!("rho(A) = {:?}", h.rho_a.rows());
    println!("rank bound {}", rank_upper_bound(&a));
    for k in 0..=a.n() {
        for face in combinations(a.n(), k) {
            println!("face {face:?}: {:?}", face_invariants_preserved(&a, &face));
        }
    }

    let beta = vec![GQ::from_ratio(2, 7)];
    let lift = homogenize_parameter(&a, &[q(1), q(1)], &beta, 11)?;
    println!("beta0 = {} after {} draws", lift.beta0, lift.attempts);

    let rho_w = vec![qr(1, 10), q(1), q(1)];
    for s in canonical_series(&h.rho_a, &lift.lifted, &rho_w, &q(3))? {
        let f = restrict_x0(&s);
        println!(
            "rho(A) residual {}, restriction has {} terms, residual against A {}",
            fmt_q(&residual(&s, &h.rho_a, &lift.lifted)?),
            f.terms.len(),
            fmt_q(&residual(&f, &a, &beta)?),
        );
    }
    Ok(())
}
