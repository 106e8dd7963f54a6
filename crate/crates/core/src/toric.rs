//! Toric ideals, weight initial ideals and standard pairs in the
//! commutative ring `Q[∂_1, ..., ∂_n]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, Bin, TermOrder};
use crate::lattice::{combinations, kernel_lattice_basis, IntegerMatrix};
use crate::linalg::{solve, to_q_matrix};
use crate::number::{dot_q_int, Q};

/// `∂^{u_plus} - ∂^{u_minus}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binomial {
    pub u_plus: Vec<i64>,
    pub u_minus: Vec<i64>,
}

impl Binomial {
    pub fn from_vector(u: &[i64]) -> Self {
        Self {
            u_plus: u.iter().map(|&x| x.max(0)).collect(),
            u_minus: u.iter().map(|&x| (-x).max(0)).collect(),
        }
    }

    /// `u_plus - u_minus`.
    pub fn vector(&self) -> Vec<i64> {
        self.u_plus.iter().zip(&self.u_minus).map(|(a, b)| a - b).collect()
    }

    fn from_bin(b: &Bin) -> Self {
        Self { u_plus: b.lead.clone(), u_minus: b.trail.clone() }
    }
}

/// Monomial ideal stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    pub n: usize,
    pub generators: Vec<Vec<i64>>,
}

impl MonomialIdeal {
    /// Minimalizes and sorts the generators.
    pub fn new(n: usize, gens: Vec<Vec<i64>>) -> Self {
        let mut minimal: Vec<Vec<i64>> = Vec::new();
        for g in &gens {
            let dominated = gens.iter().any(|h| h != g && divides(h, g));
            if !dominated && !minimal.contains(g) {
                minimal.push(g.clone());
            }
        }
        minimal.sort();
        Self { n, generators: minimal }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.generators.iter().any(|g| divides(g, v))
    }
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The family `root + N^face` of standard monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StandardPair {
    pub root: Vec<i64>,
    pub face: Vec<usize>,
}

impl StandardPair {
    pub fn covers(&self, v: &[i64]) -> bool {
        v.iter().enumerate().all(|(i, &x)| {
            if self.face.contains(&i) {
                x >= self.root[i]
            } else {
                x == self.root[i]
            }
        })
    }
}

/// Generators of `I_A`: the saturation of the lattice basis ideal by the
/// product of all variables, via one extra eliminated variable.
pub fn toric_generators(a: &IntegerMatrix) -> Vec<Binomial> {
    let n = a.n();
    let kb = kernel_lattice_basis(a);
    if kb.m() == 0 {
        return Vec::new();
    }
    let mut gens: Vec<(Vec<i64>, Vec<i64>)> = kb
        .columns
        .iter()
        .map(|b| {
            let b = Binomial::from_vector(b);
            let mut p = b.u_plus;
            let mut m = b.u_minus;
            p.push(0);
            m.push(0);
            (p, m)
        })
        .collect();
    gens.push((vec![1; n + 1], vec![0; n + 1]));
    let one = Q::from_integer(1.into());
    let zero = Q::from_integer(0.into());
    let mut t_row = vec![zero; n + 1];
    t_row[n] = one.clone();
    let ord = TermOrder::new(&[t_row, vec![one; n + 1]]);
    let gb = groebner_basis(&gens, &ord);
    let eliminated: Vec<(Vec<i64>, Vec<i64>)> = gb
        .into_iter()
        .filter(|b| b.lead[n] == 0 && b.trail[n] == 0)
        .map(|b| (b.lead[..n].to_vec(), b.trail[..n].to_vec()))
        .collect();
    groebner_basis(&eliminated, &TermOrder::graded(n))
        .iter()
        .map(Binomial::from_bin)
        .collect()
}

/// Reduced Gröbner basis of the ideal generated by `gens` for the order
/// refining `w`, oriented so that `u_plus` is the `w`-leading monomial.
/// Fails if some element has a `w`-tie.
pub fn weight_groebner_basis(gens: &[Binomial], w: &[Q]) -> Result<Vec<Binomial>> {
    if w.iter().any(|x| *x <= Q::from_integer(0.into())) {
        return Err(Error::Dimension("weight vector must be strictly positive".into()));
    }
    let pairs: Vec<(Vec<i64>, Vec<i64>)> =
        gens.iter().map(|b| (b.u_plus.clone(), b.u_minus.clone())).collect();
    let gb = groebner_basis(&pairs, &TermOrder::weighted(w));
    for b in &gb {
        if dot_q_int(w, &b.lead) == dot_q_int(w, &b.trail) {
            return Err(Error::NotGenericWeight(format!(
                "initial form of {:?} - {:?} is not a monomial",
                b.lead, b.trail
            )));
        }
    }
    Ok(gb.iter().map(Binomial::from_bin).collect())
}

/// `in_w(I)` as a monomial ideal.
pub fn initial_ideal(gens: &[Binomial], w: &[Q]) -> Result<MonomialIdeal> {
    let n = w.len();
    let gb = weight_groebner_basis(gens, w)?;
    Ok(MonomialIdeal::new(n, gb.into_iter().map(|b| b.u_plus).collect()))
}

/// Standard pair decomposition of the complement of `m`, by bounded
/// enumeration of maximal admissible pairs.
pub fn standard_pairs(m: &MonomialIdeal) -> Vec<StandardPair> {
    let n = m.n;
    let bound: Vec<i64> = (0..n)
        .map(|j| m.generators.iter().map(|g| g[j]).max().unwrap_or(0))
        .collect();
    let admissible = |root: &[i64], face: &[usize]| {
        m.generators
            .iter()
            .all(|g| (0..n).any(|i| !face.contains(&i) && g[i] > root[i]))
    };
    let mut out = Vec::new();
    for k in 0..=n {
        for face in combinations(n, k) {
            let free: Vec<usize> = (0..n).filter(|i| !face.contains(i)).collect();
            for root in boxed_roots(n, &free, &bound) {
                if !admissible(&root, &face) {
                    continue;
                }
                let maximal = free.iter().all(|&j| {
                    let mut r = root.clone();
                    r[j] = 0;
                    let mut f = face.clone();
                    f.push(j);
                    f.sort_unstable();
                    !admissible(&r, &f)
                });
                if maximal {
                    out.push(StandardPair { root, face: face.clone() });
                }
            }
        }
    }
    out.sort();
    out
}

fn boxed_roots(n: usize, free: &[usize], bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; n]];
    for &j in free {
        out = out
            .into_iter()
            .flat_map(|r| {
                (0..bound[j].max(1)).map(move |x| {
                    let mut s = r.clone();
                    s[j] = x;
                    s
                })
            })
            .collect();
    }
    out
}

/// Whether `(1, ..., 1)` lies in the rational row span of `A`.
pub fn is_homogeneous(a: &IntegerMatrix) -> bool {
    let at = to_q_matrix(&a.transpose());
    let ones = vec![Q::from_integer(1.into()); a.n()];
    solve(&at, &ones, a.d()).is_some()
}
