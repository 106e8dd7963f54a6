//! Horn-type series `Φ_B`, Horn operators, the first-order inhomogeneous
//! recurrence, and dehomogenization of the torus action.
//!
//! Series in `z` reuse [`MixedSeries`] with `m` variables; `log z_k` plays the
//! role of `log x_k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::KernelBasis;
use crate::linalg::solve;
use crate::number::{dot_q_int, GQ, Q};
use crate::series::{expand_kernel_monomial, theta_action, LogPoly, MixedSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornSystem {
    /// Columns `b_1, ..., b_m`; row `j` is `B_j`.
    pub b: KernelBasis,
    pub alpha: Vec<GQ>,
}

impl HornSystem {
    pub fn new(b: KernelBasis, alpha: Vec<GQ>) -> Result<Self> {
        if alpha.len() != b.n {
            return Err(Error::Dimension(format!("alpha has length {}, expected {}", alpha.len(), b.n)));
        }
        Ok(Self { b, alpha })
    }

    pub fn m(&self) -> usize {
        self.b.m()
    }
}

/// `B_j · mu + alpha_j - shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub j: usize,
    pub row: Vec<i64>,
    pub alpha_j: GQ,
    pub shift: i64,
}

impl LinearFactor {
    pub fn constant(&self) -> GQ {
        &self.alpha_j - &GQ::from_int(self.shift)
    }

    pub fn eval(&self, mu: &[i64]) -> GQ {
        let s: i64 = self.row.iter().zip(mu).map(|(a, b)| a * b).sum();
        &GQ::from_int(s - self.shift) + &self.alpha_j
    }
}

fn product(factors: &[LinearFactor], mu: &[i64]) -> GQ {
    factors.iter().fold(GQ::one(), |acc, f| &acc * &f.eval(mu))
}

/// `(P_k, Q_k)` as lists of linear factors (`k` is 0-based).
pub fn horn_polynomials(h: &HornSystem, k: usize) -> (Vec<LinearFactor>, Vec<LinearFactor>) {
    let mut p = Vec::new();
    let mut q = Vec::new();
    for j in 0..h.b.n {
        let bjk = h.b.entry(j, k);
        let target = if bjk > 0 { &mut p } else { &mut q };
        for l in 0..bjk.unsigned_abs() as i64 {
            target.push(LinearFactor { j, row: h.b.row(j), alpha_j: h.alpha[j].clone(), shift: l });
        }
    }
    (p, q)
}

fn pole_check(q: &[LinearFactor], mu: &[i64]) -> Result<GQ> {
    let mut acc = GQ::one();
    for f in q {
        let v = f.eval(mu);
        if v.is_zero() {
            return Err(Error::PoleHit(format!(
                "B_{} · mu + alpha_{} - {} vanishes at mu = {:?} (alpha_{} = {})",
                f.j, f.j, f.shift, mu, f.j, f.alpha_j
            )));
        }
        acc = &acc * &v;
    }
    Ok(acc)
}

/// `R_mu(alpha)` by the nested product over coordinates.
pub fn horn_coefficient(h: &HornSystem, mu: &[i64]) -> Result<GQ> {
    let m = h.m();
    if mu.len() != m || mu.iter().any(|&x| x < 0) {
        return Err(Error::Dimension(format!("mu must be in N^{m}")));
    }
    let mut acc = GQ::one();
    let mut den = GQ::one();
    for l in 0..m {
        let (p, q) = horn_polynomials(h, l);
        let mut point = vec![0i64; m];
        point[..l].copy_from_slice(&mu[..l]);
        for j in 0..mu[l] {
            point[l] = j;
            acc = &acc * &product(&p, &point);
            point[l] = j + 1;
            den = &den * &pole_check(&q, &point)?;
        }
    }
    Ok(&acc / &den)
}

/// All `mu ∈ N^m` with `|mu| <= total`, sorted.
pub fn multi_indices(m: usize, total: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                let used: i64 = p.iter().sum();
                (0..=total - used).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// `Φ_B` truncated at `|mu| <= t`, with weight `(1, ..., 1)`.
pub fn horn_series(h: &HornSystem, t: &Q) -> Result<MixedSeries> {
    let m = h.m();
    let total = t.floor().to_integer().try_into().unwrap_or(0i64);
    let mut s = MixedSeries::new(vec![GQ::zero(); m], vec![Q::one(); m], t.clone());
    for mu in multi_indices(m, total) {
        let c = horn_coefficient(h, &mu)?;
        s.add_term(mu, vec![0; m], &c);
    }
    Ok(s)
}

fn apply_factors(p: &LogPoly, exponent: &[GQ], factors: &[LinearFactor]) -> LogPoly {
    let mut cur = p.clone();
    for f in factors {
        let mut next = LogPoly::new();
        for (i, &r) in f.row.iter().enumerate() {
            if r == 0 {
                continue;
            }
            for (k, v) in theta_action(&cur, &exponent[i], i) {
                *next.entry(k).or_insert_with(GQ::zero) += &(&v * &GQ::from_int(r));
            }
        }
        for (k, v) in &cur {
            *next.entry(k.clone()).or_insert_with(GQ::zero) += &(v * &f.constant());
        }
        next.retain(|_, v| !v.is_zero());
        cur = next;
    }
    cur
}

/// `H_k F = Q_k(θ) F - z_k P_k(θ) F`, exact on the truncation of `F`.
pub fn horn_operator_apply(f: &MixedSeries, h: &HornSystem, k: usize) -> Result<MixedSeries> {
    let m = h.m();
    if f.n() != m || k >= m {
        return Err(Error::Dimension("series and Horn system do not match".into()));
    }
    let (p, q) = horn_polynomials(h, k);
    let mut out = MixedSeries::new(f.base.clone(), f.weight.clone(), f.truncation.clone());
    for (u, poly) in f.grouped() {
        let e = f.exponent(&u);
        for (d, c) in apply_factors(&poly, &e, &q) {
            out.add_term(u.clone(), d, &c);
        }
        let mut shifted = u.clone();
        shifted[k] += 1;
        for (d, c) in apply_factors(&poly, &e, &p) {
            out.add_term(shifted.clone(), d, &-c);
        }
    }
    Ok(out)
}

/// Solves `Q_r(mu+e_r) f_{mu+e_r} - P_r(mu) f_mu = g_{mu+e_r}` along
/// direction `r`, starting from each given point of the initial layer, for
/// `length` steps. Missing `g` entries are zero.
pub fn solve_recurrence(
    h: &HornSystem,
    r: usize,
    g: &BTreeMap<Vec<i64>, GQ>,
    initial: &BTreeMap<Vec<i64>, GQ>,
    length: usize,
) -> Result<BTreeMap<Vec<i64>, GQ>> {
    let (p, q) = horn_polynomials(h, r);
    let mut out = BTreeMap::new();
    for (start, f0) in initial {
        let mut mu = start.clone();
        let mut f = f0.clone();
        out.insert(mu.clone(), f.clone());
        for _ in 0..length {
            let mut next = mu.clone();
            next[r] += 1;
            let qv = pole_check(&q, &next)?;
            let gv = g.get(&next).cloned().unwrap_or_else(GQ::zero);
            f = &(&(&product(&p, &mu) * &f) + &gv) / &qv;
            mu = next;
            out.insert(mu.clone(), f.clone());
        }
    }
    Ok(out)
}

/// `q` with `p(l) = q(B^T l)`, or `None`.
fn rewrite_log_poly(p: &LogPoly, columns: &[Vec<i64>], n: usize) -> Option<LogPoly> {
    let m = columns.len();
    let deg = p.keys().map(|d| d.iter().sum::<u32>()).max().unwrap_or(0);
    let mut monos: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..m {
        monos = monos
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=deg - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    let images: Vec<LogPoly> = monos.iter().map(|e| expand_kernel_monomial(e, columns, n)).collect();
    let mut keys: Vec<Vec<u32>> = p.keys().cloned().collect();
    for im in &images {
        keys.extend(im.keys().cloned());
    }
    keys.sort();
    keys.dedup();
    let mat: Vec<Vec<GQ>> = keys
        .iter()
        .map(|k| images.iter().map(|im| im.get(k).cloned().unwrap_or_else(GQ::zero)).collect())
        .collect();
    let rhs: Vec<GQ> = keys.iter().map(|k| p.get(k).cloned().unwrap_or_else(GQ::zero)).collect();
    let x = solve(&mat, &rhs, monos.len())?;
    Some(monos.into_iter().zip(x).filter(|(_, c)| !c.is_zero()).collect())
}

/// `F` with `φ = x^alpha F(x^{b_1}, ..., x^{b_m})`, where `alpha` is the base
/// of `φ`. The weight of `F` is `B^T w`; the truncation is unchanged.
pub fn dehomogenize(phi: &MixedSeries, b: &KernelBasis) -> Result<MixedSeries> {
    let m = b.m();
    let n = phi.n();
    let wz: Vec<Q> = b.columns.iter().map(|c| dot_q_int(&phi.weight, c)).collect();
    let mut f = MixedSeries::new(vec![GQ::zero(); m], wz, phi.truncation.clone());
    for (u, p) in phi.grouped() {
        let nu = b
            .coordinates(&u)
            .ok_or_else(|| Error::NotInCone(format!("offset {u:?} is not in the lattice spanned by B")))?;
        let qpoly = rewrite_log_poly(&p, &b.columns, n)
            .ok_or_else(|| Error::NotInSymmetricAlgebra(format!("coefficient of offset {u:?}")))?;
        for (d, c) in qpoly {
            f.add_term(nu.clone(), d, &c);
        }
    }
    Ok(f)
}

/// Inverse of [`dehomogenize`]: substitutes `z_k = x^{b_k}` and multiplies by
/// `x^alpha`.
pub fn rehomogenize(f: &MixedSeries, b: &KernelBasis, alpha: &[GQ], w: &[Q]) -> Result<MixedSeries> {
    if f.n() != b.m() || alpha.len() != b.n {
        return Err(Error::Dimension("series, basis and exponent do not match".into()));
    }
    let n = b.n;
    let mut phi = MixedSeries::new(alpha.to_vec(), w.to_vec(), f.truncation.clone());
    for ((nu, d), c) in &f.terms {
        let u = b.combine(nu);
        for (e, x) in expand_kernel_monomial(d, &b.columns, n) {
            phi.add_term(u.clone(), e, &(c * &x));
        }
    }
    Ok(phi)
}
