//! Exponents, logarithm-free series, logarithmic canonical series and their
//! verification and evaluation.

mod canonical;
mod evaluate;
mod exponents;

pub use canonical::{antiderivative_solution, canonical_series, canonical_series_with, perturb_exponent, residual};
pub use evaluate::{evaluate, ln_gamma, EvalMode, Evaluation};
pub use exponents::{
    fake_exponents, log_free_series, minimal_negative_support, negative_support, scan_exponents, ExponentScan,
    FakeExponent,
};

use crate::error::{Error, Result};
use crate::lattice::{adapted_lattice_basis_with, kernel_lattice_basis, normalized_volume, IntegerMatrix, KernelBasis};
use crate::number::{dot_q_int, Q};
use crate::toric::{standard_pairs, toric_generators, weight_groebner_basis, Binomial, MonomialIdeal, StandardPair};

/// Everything about `(A, w)` that does not depend on the parameter.
#[derive(Clone, Debug)]
pub struct SeriesSetup {
    pub a: IntegerMatrix,
    pub w: Vec<Q>,
    /// Reduced Gröbner basis of `I_A`, `u_plus` the `w`-leading side.
    pub groebner: Vec<Binomial>,
    pub initial: MonomialIdeal,
    pub pairs: Vec<StandardPair>,
    /// The kernel basis used for log coordinates `y = B^T log x`.
    pub kernel: KernelBasis,
    /// Lattice basis whose `N`-span contains every Gröbner-basis vector.
    pub lambda: Vec<Vec<i64>>,
    pub volume: u64,
}

impl SeriesSetup {
    pub fn new(a: &IntegerMatrix, w: &[Q]) -> Result<Self> {
        if w.len() != a.n() {
            return Err(Error::Dimension(format!("weight has length {}, expected {}", w.len(), a.n())));
        }
        let groebner = weight_groebner_basis(&toric_generators(a), w)?;
        let initial = MonomialIdeal::new(a.n(), groebner.iter().map(|b| b.u_plus.clone()).collect());
        let pairs = standard_pairs(&initial);
        let kernel = kernel_lattice_basis(a);
        let lambda = if kernel.m() == 0 {
            Vec::new()
        } else {
            let rays: Vec<Vec<i64>> = groebner
                .iter()
                .map(|g| kernel.coordinates(&g.vector()).expect("Gröbner vectors lie in the kernel"))
                .collect();
            let wk: Vec<Q> = kernel.columns.iter().map(|c| dot_q_int(w, c)).collect();
            let ident: Vec<Vec<i64>> = (0..kernel.m())
                .map(|i| (0..kernel.m()).map(|j| i64::from(i == j)).collect())
                .collect();
            let adapted = adapted_lattice_basis_with(&rays, &ident, Some(&wk))?;
            adapted.basis.iter().map(|nu| kernel.combine(nu)).collect()
        };
        let all: Vec<usize> = (0..a.n()).collect();
        let volume = normalized_volume(a, &all);
        Ok(Self { a: a.clone(), w: w.to_vec(), groebner, initial, pairs, kernel, lambda, volume })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// `n · 2^{2d} · vol(A)`.
    pub fn log_degree_cap(&self) -> usize {
        self.n() * (1usize << (2 * self.a.d())) * self.volume as usize
    }
}
