//! Truncated mixed series `x^alpha Σ_u p_u(log x) x^u` with exact
//! Gaussian-rational coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::number::{dot_q_int, GQ, Q};

/// Polynomial in `log x_1, ..., log x_n`, keyed by exponent vector.
pub type LogPoly = BTreeMap<Vec<u32>, GQ>;

/// Derivative with respect to `log x_j`.
pub fn log_derivative(p: &LogPoly, j: usize) -> LogPoly {
    let mut out = LogPoly::new();
    for (d, c) in p {
        if d[j] > 0 {
            let mut e = d.clone();
            e[j] -= 1;
            let v = c * &GQ::from_int(d[j] as i64);
            add_into(&mut out, e, &v);
        }
    }
    out
}

fn add_into(p: &mut LogPoly, key: Vec<u32>, c: &GQ) {
    if c.is_zero() {
        return;
    }
    let entry = p.entry(key.clone()).or_insert_with(GQ::zero);
    *entry += c;
    if entry.is_zero() {
        p.remove(&key);
    }
}

fn scale_poly(p: &LogPoly, c: &GQ) -> LogPoly {
    if c.is_zero() {
        return LogPoly::new();
    }
    p.iter().map(|(k, v)| (k.clone(), v * c)).collect()
}

fn sum_poly(a: &LogPoly, b: &LogPoly) -> LogPoly {
    let mut out = a.clone();
    for (k, v) in b {
        add_into(&mut out, k.clone(), v);
    }
    out
}

/// `c p + D_j p`: the action of `x_j ∂_j` on `x^c p(log x)` with `c_j = c`.
pub fn theta_action(p: &LogPoly, c: &GQ, j: usize) -> LogPoly {
    sum_poly(&scale_poly(p, c), &log_derivative(p, j))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSeries {
    pub base: Vec<GQ>,
    /// `(offset u, log degree delta) -> coefficient`; zero coefficients are
    /// never stored.
    pub terms: BTreeMap<(Vec<i64>, Vec<u32>), GQ>,
    /// The series is complete for every offset with `w · u <= truncation`.
    pub truncation: Q,
    pub weight: Vec<Q>,
}

impl MixedSeries {
    pub fn new(base: Vec<GQ>, weight: Vec<Q>, truncation: Q) -> Self {
        Self { base, terms: BTreeMap::new(), truncation, weight }
    }

    /// The single term `x^base`.
    pub fn monomial(base: Vec<GQ>, weight: Vec<Q>, truncation: Q) -> Self {
        let n = base.len();
        let mut s = Self::new(base, weight, truncation);
        s.add_term(vec![0; n], vec![0; n], &GQ::one());
        s
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn offset_weight(&self, u: &[i64]) -> Q {
        dot_q_int(&self.weight, u)
    }

    /// Adds `c x^{base+u} log(x)^delta`; offsets beyond the truncation are
    /// dropped.
    pub fn add_term(&mut self, u: Vec<i64>, delta: Vec<u32>, c: &GQ) {
        if c.is_zero() || self.offset_weight(&u) > self.truncation {
            return;
        }
        let key = (u, delta);
        let entry = self.terms.entry(key.clone()).or_insert_with(GQ::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, u: &[i64], delta: &[u32]) -> GQ {
        self.terms
            .get(&(u.to_vec(), delta.to_vec()))
            .cloned()
            .unwrap_or_else(GQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_log_free(&self) -> bool {
        self.terms.keys().all(|(_, d)| d.iter().all(|&x| x == 0))
    }

    pub fn max_log_degree(&self) -> u32 {
        self.terms.keys().map(|(_, d)| d.iter().sum()).max().unwrap_or(0)
    }

    /// Terms grouped by offset.
    pub fn grouped(&self) -> BTreeMap<Vec<i64>, LogPoly> {
        let mut out: BTreeMap<Vec<i64>, LogPoly> = BTreeMap::new();
        for ((u, d), c) in &self.terms {
            out.entry(u.clone()).or_default().insert(d.clone(), c.clone());
        }
        out
    }

    /// Exponent `base + u`.
    pub fn exponent(&self, u: &[i64]) -> Vec<GQ> {
        self.base
            .iter()
            .zip(u)
            .map(|(a, &x)| a + &GQ::from_int(x))
            .collect()
    }

    pub fn truncate(&self, t: &Q) -> Self {
        let t = if *t < self.truncation { t.clone() } else { self.truncation.clone() };
        let mut out = Self::new(self.base.clone(), self.weight.clone(), t);
        for ((u, d), c) in &self.terms {
            out.add_term(u.clone(), d.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &GQ) -> Self {
        let mut out = Self::new(self.base.clone(), self.weight.clone(), self.truncation.clone());
        for ((u, d), v) in &self.terms {
            out.add_term(u.clone(), d.clone(), &(v * c));
        }
        out
    }

    /// Sum of two series over the same base; truncation is the minimum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Dimension("series have different base exponents".into()));
        }
        let t = if self.truncation < other.truncation {
            self.truncation.clone()
        } else {
            other.truncation.clone()
        };
        let mut out = Self::new(self.base.clone(), self.weight.clone(), t);
        for ((u, d), c) in self.terms.iter().chain(&other.terms) {
            out.add_term(u.clone(), d.clone(), c);
        }
        Ok(out)
    }

    /// Same series written over another base exponent that differs from the
    /// current one by an integer vector.
    pub fn rebase(&self, new_base: &[GQ]) -> Result<Self> {
        let shift: Option<Vec<i64>> = self
            .base
            .iter()
            .zip(new_base)
            .map(|(a, b)| (a - b).as_integer())
            .collect();
        let shift = shift.ok_or_else(|| Error::Dimension("bases differ by a non-integer vector".into()))?;
        let t = &self.truncation + dot_q_int(&self.weight, &shift);
        let mut out = Self::new(new_base.to_vec(), self.weight.clone(), t);
        for ((u, d), c) in &self.terms {
            let v: Vec<i64> = u.iter().zip(&shift).map(|(a, b)| a + b).collect();
            out.add_term(v, d.clone(), c);
        }
        Ok(out)
    }
}

/// `x^a ∂^b • s`; the truncation moves by `w · (a - b)`.
pub fn apply_weyl_monomial(s: &MixedSeries, a: &[i64], b: &[i64]) -> MixedSeries {
    let shift: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let t = &s.truncation + dot_q_int(&s.weight, &shift);
    let mut out = MixedSeries::new(s.base.clone(), s.weight.clone(), t);
    for (u, p) in s.grouped() {
        let c = s.exponent(&u);
        let mut poly = p;
        for (j, &bj) in b.iter().enumerate() {
            let mut e = c[j].clone();
            for _ in 0..bj {
                poly = theta_action(&poly, &e, j);
                e -= &GQ::one();
            }
        }
        let v: Vec<i64> = u.iter().zip(&shift).map(|(x, y)| x + y).collect();
        for (d, coeff) in poly {
            out.add_term(v.clone(), d, &coeff);
        }
    }
    out
}

/// `(E_i - beta_i) • s`.
pub fn apply_euler(s: &MixedSeries, a: &IntegerMatrix, i: usize, beta_i: &GQ) -> MixedSeries {
    let mut out = MixedSeries::new(s.base.clone(), s.weight.clone(), s.truncation.clone());
    for (u, p) in s.grouped() {
        let c = s.exponent(&u);
        let mut acc = scale_poly(&p, &(-beta_i));
        for j in 0..s.n() {
            let aij = a.entry(i, j);
            if aij != 0 {
                let t = theta_action(&p, &c[j], j);
                acc = sum_poly(&acc, &scale_poly(&t, &GQ::from_int(aij)));
            }
        }
        for (d, coeff) in acc {
            out.add_term(u.clone(), d, &coeff);
        }
    }
    out
}

/// Returns `(exponent + e_j, q)` with `∂_j • x^{exponent + e_j} q = x^exponent p`.
pub fn log_antiderivative(exponent: &[GQ], p: &LogPoly, j: usize) -> Result<(Vec<GQ>, LogPoly)> {
    let c = &exponent[j] + &GQ::one();
    if c.is_zero() {
        return Err(Error::ExponentMinusOne);
    }
    let inv = c.inv().expect("nonzero");
    // q = Σ_k (-1)^k D_j^k p / c^{k+1}
    let mut q = LogPoly::new();
    let mut term = p.clone();
    let mut factor = inv.clone();
    while !term.is_empty() {
        q = sum_poly(&q, &scale_poly(&term, &factor));
        term = log_derivative(&term, j);
        factor = -(&factor * &inv);
    }
    let mut e = exponent.to_vec();
    e[j] = c;
    Ok((e, q))
}

/// Termwise `∂_j^{-1}` of a whole series; the base moves by `e_j`.
pub fn series_antiderivative(s: &MixedSeries, j: usize) -> Result<MixedSeries> {
    let mut base = s.base.clone();
    base[j] += &GQ::one();
    let mut out = MixedSeries::new(base, s.weight.clone(), s.truncation.clone());
    for (u, p) in s.grouped() {
        let (_, q) = log_antiderivative(&s.exponent(&u), &p, j)?;
        for (d, c) in q {
            out.add_term(u.clone(), d, &c);
        }
    }
    Ok(out)
}

/// Coefficientwise product on matching offsets.
pub fn hadamard_product(s1: &MixedSeries, s2: &MixedSeries) -> Result<MixedSeries> {
    if !s1.is_log_free() || !s2.is_log_free() {
        return Err(Error::LogTermsPresent);
    }
    let t = if s1.truncation < s2.truncation { s1.truncation.clone() } else { s2.truncation.clone() };
    let mut out = MixedSeries::new(s1.base.clone(), s1.weight.clone(), t);
    for ((u, d), c) in &s1.terms {
        let c2 = s2.coefficient(u, d);
        out.add_term(u.clone(), d.clone(), &(c * &c2));
    }
    Ok(out)
}

/// The finitely supported subsum of minimal weight `mu = Re(w · (alpha + u))`.
pub fn initial_series(s: &MixedSeries) -> Result<(MixedSeries, Q)> {
    let min = s
        .terms
        .keys()
        .map(|(u, _)| s.offset_weight(u))
        .min()
        .ok_or(Error::EmptySeries)?;
    let mut out = MixedSeries::new(s.base.clone(), s.weight.clone(), s.truncation.clone());
    for ((u, d), c) in &s.terms {
        if s.offset_weight(u) == min {
            out.add_term(u.clone(), d.clone(), c);
        }
    }
    let base_w: Q = s.base.iter().zip(&s.weight).map(|(a, w)| &a.re * w).sum();
    Ok((out, base_w + min))
}

/// All `u = Σ ν_k b_k`, `ν ∈ N^m`, with `w · u <= t`, by increasing weight and
/// then lexicographically. Every basis vector must have positive weight.
pub fn enumerate_support(w: &[Q], basis: &[Vec<i64>], t: &Q) -> Result<Vec<Vec<i64>>> {
    let n = w.len();
    if *t < Q::zero() {
        return Ok(Vec::new());
    }
    let weights: Vec<Q> = basis.iter().map(|b| dot_q_int(w, b)).collect();
    if weights.iter().any(|x| *x <= Q::zero()) {
        return Err(Error::NotInCone("basis vector with nonpositive weight".into()));
    }
    let mut out: Vec<(Q, Vec<i64>)> = Vec::new();
    let mut stack: Vec<(usize, Vec<i64>, Q)> = vec![(0, vec![0; n], Q::zero())];
    while let Some((k, u, wu)) = stack.pop() {
        if k == basis.len() {
            out.push((wu, u));
            continue;
        }
        let mut cur = u;
        let mut cw = wu;
        while cw <= *t {
            stack.push((k + 1, cur.clone(), cw.clone()));
            cur = cur.iter().zip(&basis[k]).map(|(a, b)| a + b).collect();
            cw += &weights[k];
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(_, u)| u).collect())
}

/// Expands `y^e` with `y_k = Σ_j b_jk log x_j` into log monomials, where
/// `columns[k]` is the `k`-th kernel basis vector.
pub fn expand_kernel_monomial(e: &[u32], columns: &[Vec<i64>], n: usize) -> LogPoly {
    let mut acc = LogPoly::new();
    acc.insert(vec![0; n], GQ::one());
    for (k, &ek) in e.iter().enumerate() {
        for _ in 0..ek {
            let mut next = LogPoly::new();
            for (d, c) in &acc {
                for (j, &bj) in columns[k].iter().enumerate() {
                    if bj != 0 {
                        let mut dd = d.clone();
                        dd[j] += 1;
                        add_into(&mut next, dd, &(c * &GQ::from_int(bj)));
                    }
                }
            }
            acc = next;
        }
    }
    acc
}
