//! Canonical series by order-by-order linear solving.
//!
//! With `y = B^T log x` for the kernel basis `B`, every coefficient
//! polynomial is `q_v(y)`, so the Euler operators hold automatically once
//! `A alpha = beta`. For `g = u_plus - u_minus` in the Gröbner basis,
//! `∂^{u_plus} φ = ∂^{u_minus} φ` compares `x^{alpha+v-u_plus}` terms:
//! `op(u_plus, alpha+v) q_v = op(u_minus, alpha+v-g) q_{v-g}` with
//! `op(b, c) = Π_j Π_{k<b_j} (c_j - k + D_j)` and `D_j = Σ_k b_jk ∂/∂y_k`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::SeriesSetup;
use crate::error::{Error, Result};
use crate::lattice::{IntegerMatrix, KernelBasis};
use crate::linalg::{nullspace, rref};
use crate::number::{dot_int, dot_q_int, GQ, Q};
use crate::series::{
    apply_euler, apply_weyl_monomial, enumerate_support, expand_kernel_monomial, log_derivative, series_antiderivative,
    LogPoly, MixedSeries,
};
use crate::toric::{is_homogeneous, toric_generators};

/// A linear combination of the free parameters, zero-padded on the right.
type Lin = Vec<GQ>;

fn lin_axpy(acc: &mut Lin, c: &GQ, x: &Lin) {
    if c.is_zero() {
        return;
    }
    if acc.len() < x.len() {
        acc.resize(x.len(), GQ::zero());
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += &(c * b);
        }
    }
}

fn lin_dot(x: &Lin, t: &[GQ]) -> GQ {
    let mut acc = GQ::zero();
    for (a, b) in x.iter().zip(t) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

/// Monomials in `m` variables of total degree `<= deg`.
fn y_monomials(m: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                let used: u32 = p.iter().sum();
                (0..=deg - used).map(move |k| {
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

fn apply_op(poly: &LogPoly, b: &[i64], exponent: &[GQ], kernel: &KernelBasis) -> LogPoly {
    let mut p = poly.clone();
    for (j, &bj) in b.iter().enumerate() {
        let mut c = exponent[j].clone();
        for _ in 0..bj {
            let mut next: LogPoly = LogPoly::new();
            for (k, v) in &p {
                next.insert(k.clone(), v * &c);
            }
            for k in 0..kernel.m() {
                let bjk = kernel.entry(j, k);
                if bjk == 0 {
                    continue;
                }
                for (key, v) in log_derivative(&p, k) {
                    let e = next.entry(key).or_insert_with(GQ::zero);
                    *e += &(&v * &GQ::from_int(bjk));
                }
            }
            next.retain(|_, v| !v.is_zero());
            p = next;
            c -= &GQ::one();
        }
    }
    p
}

/// Matrix of `op(b, exponent)` on the span of `monos`, indexed `[row][col]`.
fn op_matrix(
    b: &[i64],
    exponent: &[GQ],
    kernel: &KernelBasis,
    monos: &[Vec<u32>],
    index: &HashMap<Vec<u32>, usize>,
) -> Vec<Vec<GQ>> {
    let k = monos.len();
    let mut mat = vec![vec![GQ::zero(); k]; k];
    for (col, e) in monos.iter().enumerate() {
        let mut p = LogPoly::new();
        p.insert(e.clone(), GQ::one());
        for (key, v) in apply_op(&p, b, exponent, kernel) {
            mat[index[&key]][col] = v;
        }
    }
    mat
}

struct Frobenius {
    /// `coeffs[i][e]`: coefficient of `y^{monos[e]}` in `q_{V[i]}`.
    coeffs: Vec<Vec<Lin>>,
    nparams: usize,
    constraints: Vec<Lin>,
}

impl Frobenius {
    fn solutions(&self) -> Vec<Vec<GQ>> {
        let rows: Vec<Vec<GQ>> = self
            .constraints
            .iter()
            .map(|c| {
                let mut r = c.clone();
                r.resize(self.nparams, GQ::zero());
                r
            })
            .collect();
        nullspace(&rows, self.nparams)
    }
}

fn frobenius(
    setup: &SeriesSetup,
    alpha_ref: &[GQ],
    offsets: &[Vec<i64>],
    monos: &[Vec<u32>],
) -> Result<Frobenius> {
    let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let pos: HashMap<&Vec<i64>, usize> = offsets.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let k = monos.len();
    let mut out = Frobenius { coeffs: Vec::with_capacity(offsets.len()), nparams: 0, constraints: Vec::new() };
    for v in offsets {
        let exp: Vec<GQ> = alpha_ref.iter().zip(v).map(|(a, &x)| a + &GQ::from_int(x)).collect();
        let mut rows: Vec<Vec<GQ>> = Vec::new();
        for g in &setup.groebner {
            let lhs = op_matrix(&g.u_plus, &exp, &setup.kernel, monos, &index);
            let gv = g.vector();
            let prev: Vec<i64> = v.iter().zip(&gv).map(|(a, b)| a - b).collect();
            let rhs: Vec<Lin> = match pos.get(&prev) {
                Some(&pi) => {
                    let pexp: Vec<GQ> = alpha_ref.iter().zip(&prev).map(|(a, &x)| a + &GQ::from_int(x)).collect();
                    let r = op_matrix(&g.u_minus, &pexp, &setup.kernel, monos, &index);
                    let known = &out.coeffs[pi];
                    r.iter()
                        .map(|row| {
                            let mut acc: Lin = Vec::new();
                            for (c, x) in row.iter().zip(known) {
                                lin_axpy(&mut acc, c, x);
                            }
                            acc
                        })
                        .collect()
                }
                None => vec![Vec::new(); k],
            };
            for (lrow, r) in lhs.into_iter().zip(rhs) {
                let mut row = lrow;
                let mut r = r;
                r.resize(out.nparams, GQ::zero());
                row.extend(r);
                rows.push(row);
            }
        }
        let pivots = rref(&mut rows, k);
        let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
        let mut fresh: HashMap<usize, usize> = HashMap::new();
        for &f in &free {
            fresh.insert(f, out.nparams);
            out.nparams += 1;
        }
        let unit = |p: usize| {
            let mut l = vec![GQ::zero(); p + 1];
            l[p] = GQ::one();
            l
        };
        let mut cv: Vec<Lin> = vec![Vec::new(); k];
        for &f in &free {
            cv[f] = unit(fresh[&f]);
        }
        for (r, &pc) in pivots.iter().enumerate() {
            let mut l: Lin = rows[r][k..].to_vec();
            for &f in &free {
                let c = -&rows[r][f];
                lin_axpy(&mut l, &c, &unit(fresh[&f]));
            }
            cv[pc] = l;
        }
        for row in rows.iter().skip(pivots.len()) {
            if row[k..].iter().any(|x| !x.is_zero()) {
                out.constraints.push(row[k..].to_vec());
            }
        }
        out.coeffs.push(cv);
    }
    Ok(out)
}

fn real_weight(w: &[Q], alpha: &[GQ]) -> Q {
    w.iter().zip(alpha).map(|(wi, a)| wi * &a.re).sum()
}

fn gq_key(v: &[GQ]) -> Vec<(Q, Q)> {
    v.iter().map(|x| (x.re.clone(), x.im.clone())).collect()
}

fn solve_class(setup: &SeriesSetup, class: &[Vec<GQ>], t: &Q) -> Result<Vec<MixedSeries>> {
    let w = &setup.w;
    let n = setup.n();
    let alpha_ref = class
        .iter()
        .min_by(|a, b| real_weight(w, a).cmp(&real_weight(w, b)))
        .expect("nonempty class")
        .clone();
    let shifts: Vec<Vec<i64>> = class
        .iter()
        .map(|a| {
            a.iter()
                .zip(&alpha_ref)
                .map(|(x, y)| (x - y).as_integer().expect("same class"))
                .collect()
        })
        .collect();
    let tmax = shifts.iter().map(|d| dot_q_int(w, d)).max().expect("nonempty");
    let t_class = t + &tmax;
    let mut vset: BTreeSet<(Q, Vec<i64>)> = BTreeSet::new();
    for d in &shifts {
        let wd = dot_q_int(w, d);
        for u in enumerate_support(w, &setup.lambda, &(&t_class - &wd))? {
            let v: Vec<i64> = u.iter().zip(d).map(|(a, b)| a + b).collect();
            vset.insert((dot_q_int(w, &v), v));
        }
    }
    let offsets: Vec<Vec<i64>> = vset.into_iter().map(|(_, v)| v).collect();
    let m = setup.kernel.m();
    let cap = setup.log_degree_cap();

    let mut deg = 0u32;
    let (frob, monos) = loop {
        let monos = y_monomials(m, deg);
        let f = frobenius(setup, &alpha_ref, &offsets, &monos)?;
        let count = f.solutions().len();
        if m == 0 {
            break (f, monos);
        }
        if deg as usize + 1 > cap {
            return Err(Error::DegreeCapExceeded(cap));
        }
        let monos1 = y_monomials(m, deg + 1);
        let f1 = frobenius(setup, &alpha_ref, &offsets, &monos1)?;
        if f1.solutions().len() == count {
            break (f, monos);
        }
        deg += 1;
    };

    // Columns in the order that makes the RREF pivot the start term: lowest
    // weight first, then highest log degree.
    let mut cols: Vec<(usize, usize)> = (0..offsets.len())
        .flat_map(|i| (0..monos.len()).map(move |e| (i, e)))
        .collect();
    cols.sort_by_key(|&(i, e)| {
        (
            dot_q_int(w, &offsets[i]),
            Reverse(monos[e].iter().sum::<u32>()),
            Reverse(monos[e].clone()),
            offsets[i].clone(),
        )
    });
    let sols = frob.solutions();
    let mut rows: Vec<Vec<GQ>> = sols
        .iter()
        .map(|tv| cols.iter().map(|&(i, e)| lin_dot(&frob.coeffs[i][e], tv)).collect())
        .collect();
    let pivots = rref(&mut rows, cols.len());

    let mut out = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        let (pi, _) = cols[pc];
        let vp = &offsets[pi];
        let base: Vec<GQ> = alpha_ref.iter().zip(vp).map(|(a, &x)| a + &GQ::from_int(x)).collect();
        let complete = &t_class - &dot_q_int(w, vp);
        let trunc = if complete < *t { complete } else { t.clone() };
        let mut s = MixedSeries::new(base, w.clone(), trunc);
        for (c, &(i, e)) in cols.iter().enumerate() {
            let coef = &rows[r][c];
            if coef.is_zero() {
                continue;
            }
            let u: Vec<i64> = offsets[i].iter().zip(vp).map(|(a, b)| a - b).collect();
            for (delta, x) in expand_kernel_monomial(&monos[e], &setup.kernel.columns, n) {
                s.add_term(u.clone(), delta, &(coef * &x));
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Canonical series solutions of `H_A(beta)` with respect to `w`, complete
/// up to `w`-weight `t` above each start exponent.
pub fn canonical_series(a: &IntegerMatrix, beta: &[GQ], w: &[Q], t: &Q) -> Result<Vec<MixedSeries>> {
    if !is_homogeneous(a) {
        return Err(Error::NotHomogeneous);
    }
    let setup = SeriesSetup::new(a, w)?;
    canonical_series_with(&setup, beta, t)
}

pub fn canonical_series_with(setup: &SeriesSetup, beta: &[GQ], t: &Q) -> Result<Vec<MixedSeries>> {
    let exps = super::exponents::scan_with(setup, beta)?.exponents;
    let mut classes: Vec<Vec<Vec<GQ>>> = Vec::new();
    for e in exps {
        let slot = classes
            .iter_mut()
            .find(|c| c[0].iter().zip(&e.alpha).all(|(x, y)| (x - y).is_integer()));
        match slot {
            Some(c) => c.push(e.alpha),
            None => classes.push(vec![e.alpha]),
        }
    }
    let mut out = Vec::new();
    for class in &classes {
        out.extend(solve_class(setup, class, t)?);
    }
    out.sort_by_key(|s| (real_weight(&s.weight, &s.base), gq_key(&s.base), s.max_log_degree()));
    Ok(out)
}

fn max_abs(s: &MixedSeries) -> Q {
    s.terms.values().map(|c| c.max_abs_component()).max().unwrap_or_else(Q::zero)
}

/// Largest coefficient, over the range where the result is complete, of
/// `s` under every toric generator and every `E_i - beta_i`.
pub fn residual(s: &MixedSeries, a: &IntegerMatrix, beta: &[GQ]) -> Result<Q> {
    if beta.len() != a.d() || s.n() != a.n() {
        return Err(Error::Dimension("series, matrix and parameter do not match".into()));
    }
    let zero = vec![0i64; a.n()];
    let mut worst = Q::zero();
    for b in toric_generators(a) {
        let lhs = apply_weyl_monomial(s, &zero, &b.u_plus);
        let rhs = apply_weyl_monomial(s, &zero, &b.u_minus).scale(&-GQ::one());
        worst = worst.max(max_abs(&lhs.add(&rhs)?));
    }
    for (i, bi) in beta.iter().enumerate() {
        worst = worst.max(max_abs(&apply_euler(s, a, i, bi)));
    }
    Ok(worst)
}

/// Top-degree log monomials at offset zero: the shape of the start term.
fn start_shape(s: &MixedSeries) -> (u32, Vec<Vec<u32>>) {
    let zero = vec![0i64; s.n()];
    let at0: BTreeMap<Vec<u32>, GQ> = s
        .terms
        .iter()
        .filter(|((u, _), _)| *u == zero)
        .map(|((_, d), c)| (d.clone(), c.clone()))
        .collect();
    let top = at0.keys().map(|d| d.iter().sum::<u32>()).max().unwrap_or(0);
    (top, at0.keys().filter(|d| d.iter().sum::<u32>() == top).cloned().collect())
}

/// The canonical series with the same start-term shape as `s`, for the
/// exponent obtained by replacing coordinate `j` with `alpha_j`.
pub fn perturb_exponent(a: &IntegerMatrix, s: &MixedSeries, j: usize, alpha_j: &GQ) -> Result<MixedSeries> {
    if j >= s.n() {
        return Err(Error::Dimension(format!("coordinate {j} out of range")));
    }
    if alpha_j.is_integer() || s.base[j].is_integer() {
        return Err(Error::IntegerPerturbation);
    }
    let mut alpha = s.base.clone();
    alpha[j] = alpha_j.clone();
    let beta: Vec<GQ> = a.rows().iter().map(|r| dot_int(r, &alpha)).collect();
    let shape = start_shape(s);
    let mut found: Vec<MixedSeries> = canonical_series(a, &beta, &s.weight, &s.truncation)?
        .into_iter()
        .filter(|c| c.base == alpha && start_shape(c) == shape)
        .collect();
    if found.len() != 1 {
        return Err(Error::NoMatchingSeries(format!("{} candidates at the perturbed exponent", found.len())));
    }
    Ok(found.pop().expect("one candidate"))
}

/// `ψ` with `∂_j ψ = s`, built termwise.
pub fn antiderivative_solution(s: &MixedSeries, j: usize) -> Result<MixedSeries> {
    if j >= s.n() {
        return Err(Error::Dimension(format!("coordinate {j} out of range")));
    }
    if s.base[j].is_integer() {
        return Err(Error::ExponentInteger(j));
    }
    series_antiderivative(s, j)
}
