use num_traits::{One, Zero};

use super::SeriesSetup;
use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::linalg::solve;
use crate::number::{falling, rising, GQ, Q};
use crate::series::{enumerate_support, MixedSeries};
use crate::toric::StandardPair;

/// A solution `alpha` of `A alpha = beta` attached to a standard pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FakeExponent {
    pub alpha: Vec<GQ>,
    pub sigma: Vec<usize>,
    pub source_pair: StandardPair,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentScan {
    pub exponents: Vec<FakeExponent>,
    /// Lower-dimensional pairs whose linear system has no solution.
    pub inconsistent: Vec<StandardPair>,
}

pub fn scan_exponents(a: &IntegerMatrix, beta: &[GQ], w: &[Q]) -> Result<ExponentScan> {
    let setup = SeriesSetup::new(a, w)?;
    scan_with(&setup, beta)
}

pub(crate) fn scan_with(setup: &SeriesSetup, beta: &[GQ]) -> Result<ExponentScan> {
    let a = &setup.a;
    if beta.len() != a.d() {
        return Err(Error::Dimension(format!("parameter has length {}, expected {}", beta.len(), a.d())));
    }
    let mut exponents: Vec<FakeExponent> = Vec::new();
    let mut inconsistent = Vec::new();
    for pair in &setup.pairs {
        let shift = a.mul_vec(&pair.root);
        let rhs: Vec<GQ> = beta.iter().zip(&shift).map(|(b, &s)| b - &GQ::from_int(s)).collect();
        let m: Vec<Vec<GQ>> = (0..a.d())
            .map(|i| pair.face.iter().map(|&j| GQ::from_int(a.entry(i, j))).collect())
            .collect();
        let Some(x) = solve(&m, &rhs, pair.face.len()) else {
            inconsistent.push(pair.clone());
            continue;
        };
        let mut alpha: Vec<GQ> = pair.root.iter().map(|&r| GQ::from_int(r)).collect();
        for (&j, v) in pair.face.iter().zip(x) {
            alpha[j] = v;
        }
        match exponents.iter_mut().find(|e| e.alpha == alpha) {
            Some(e) => e.multiplicity += 1,
            None => exponents.push(FakeExponent {
                alpha,
                sigma: pair.face.clone(),
                source_pair: pair.clone(),
                multiplicity: 1,
            }),
        }
    }
    Ok(ExponentScan { exponents, inconsistent })
}

/// Fake exponents of `H_A(beta)` with respect to `w`, one entry per distinct
/// vector.
pub fn fake_exponents(a: &IntegerMatrix, beta: &[GQ], w: &[Q]) -> Result<Vec<FakeExponent>> {
    Ok(scan_exponents(a, beta, w)?.exponents)
}

/// `{i : alpha_i ∈ Z_{<0}}`.
pub fn negative_support(alpha: &[GQ]) -> Vec<usize> {
    (0..alpha.len()).filter(|&i| alpha[i].is_negative_integer()).collect()
}

fn shifted(alpha: &[GQ], u: &[i64]) -> Vec<GQ> {
    alpha.iter().zip(u).map(|(a, &x)| a + &GQ::from_int(x)).collect()
}

/// Bounded check: no `±u` with `u` in the support lattice cone and
/// `w · u <= t` makes the negative support strictly smaller.
pub fn minimal_negative_support(alpha: &[GQ], a: &IntegerMatrix, w: &[Q], t: &Q) -> Result<bool> {
    let setup = SeriesSetup::new(a, w)?;
    mns_with(&setup, alpha, t)
}

pub(crate) fn mns_with(setup: &SeriesSetup, alpha: &[GQ], t: &Q) -> Result<bool> {
    let ns = negative_support(alpha);
    if ns.is_empty() {
        return Ok(true);
    }
    for u in enumerate_support(&setup.w, &setup.lambda, t)? {
        let neg: Vec<i64> = u.iter().map(|x| -x).collect();
        for v in [&u, &neg] {
            let other = negative_support(&shifted(alpha, v));
            if other.len() < ns.len() && other.iter().all(|i| ns.contains(i)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The logarithm-free series with exponent `alpha`, from the closed
/// coefficient formula.
pub fn log_free_series(alpha: &[GQ], a: &IntegerMatrix, w: &[Q], t: &Q) -> Result<MixedSeries> {
    let setup = SeriesSetup::new(a, w)?;
    log_free_with(&setup, alpha, t)
}

pub(crate) fn log_free_with(setup: &SeriesSetup, alpha: &[GQ], t: &Q) -> Result<MixedSeries> {
    if !mns_with(setup, alpha, t)? {
        return Err(Error::NotMinimalNegativeSupport);
    }
    let n = alpha.len();
    let ns = negative_support(alpha);
    let mut s = MixedSeries::new(alpha.to_vec(), setup.w.clone(), t.clone());
    for u in enumerate_support(&setup.w, &setup.lambda, t)? {
        if negative_support(&shifted(alpha, &u)) != ns {
            continue;
        }
        let mut num = GQ::one();
        let mut den = GQ::one();
        for i in 0..n {
            let k = u[i].unsigned_abs();
            if u[i] < 0 {
                num = &num * &falling(&alpha[i], k);
            } else if u[i] > 0 {
                den = &den * &rising(&(&alpha[i] + &GQ::one()), k);
            }
        }
        if num.is_zero() {
            continue;
        }
        let c = &num / &den;
        s.add_term(u, vec![0; n], &c);
    }
    Ok(s)
}
