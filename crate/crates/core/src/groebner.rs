//! Buchberger's algorithm specialised to pure difference binomials
//! `x^a - x^b`, which is all toric and lattice ideals ever need.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::number::Q;

/// Matrix term order: compare by each weight row in turn, then
/// lexicographically with `x_1 > x_2 > ... > x_n`.
#[derive(Clone, Debug)]
pub struct TermOrder {
    rows: Vec<Vec<i128>>,
}

impl TermOrder {
    /// Rows are rescaled to integers; positive scaling does not change the order.
    pub fn new(rows: &[Vec<Q>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                let l = r
                    .iter()
                    .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
                r.iter()
                    .map(|x| {
                        (x * Q::from_integer(l.clone()))
                            .to_integer()
                            .to_i128()
                            .expect("weight too large")
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// Degree order refined by lex.
    pub fn graded(n: usize) -> Self {
        Self { rows: vec![vec![1; n]] }
    }

    /// The order given by `w`, ties broken by total degree and then lex.
    pub fn weighted(w: &[Q]) -> Self {
        let ones = vec![Q::from_integer(1.into()); w.len()];
        Self::new(&[w.to_vec(), ones])
    }

    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        for r in &self.rows {
            let wa: i128 = r.iter().zip(a).map(|(x, &y)| x * y as i128).sum();
            let wb: i128 = r.iter().zip(b).map(|(x, &y)| x * y as i128).sum();
            match wa.cmp(&wb) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        a.cmp(b)
    }
}

/// `x^lead - x^trail` with `lead` the larger monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bin {
    pub lead: Vec<i64>,
    pub trail: Vec<i64>,
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn orient(a: Vec<i64>, b: Vec<i64>, ord: &TermOrder) -> Option<Bin> {
    match ord.cmp(&a, &b) {
        Ordering::Greater => Some(Bin { lead: a, trail: b }),
        Ordering::Less => Some(Bin { lead: b, trail: a }),
        Ordering::Equal => None,
    }
}

fn rewrite(m: &[i64], g: &Bin) -> Vec<i64> {
    m.iter()
        .zip(&g.lead)
        .zip(&g.trail)
        .map(|((x, l), t)| x - l + t)
        .collect()
}

/// Full reduction of `x^a - x^b` modulo `basis`. Returns `None` for zero.
fn reduce(a: Vec<i64>, b: Vec<i64>, basis: &[Bin], ord: &TermOrder) -> Option<Bin> {
    let mut h = orient(a, b, ord)?;
    loop {
        if let Some(g) = basis.iter().find(|g| divides(&g.lead, &h.lead)) {
            let nl = rewrite(&h.lead, g);
            h = orient(nl, h.trail, ord)?;
            continue;
        }
        if let Some(g) = basis.iter().find(|g| divides(&g.lead, &h.trail)) {
            let nt = rewrite(&h.trail, g);
            h = orient(h.lead, nt, ord)?;
            continue;
        }
        return Some(h);
    }
}

/// Reduced Gröbner basis of the binomial ideal generated by
/// `x^{a_i} - x^{b_i}`, sorted for reproducibility.
pub fn groebner_basis(gens: &[(Vec<i64>, Vec<i64>)], ord: &TermOrder) -> Vec<Bin> {
    let mut basis: Vec<Bin> = Vec::new();
    for (a, b) in gens {
        if let Some(h) = reduce(a.clone(), b.clone(), &basis, ord) {
            basis.push(h);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        let (f, g) = (&basis[i], &basis[j]);
        if f.lead.iter().zip(&g.lead).all(|(x, y)| *x == 0 || *y == 0) {
            continue;
        }
        let l: Vec<i64> = f.lead.iter().zip(&g.lead).map(|(x, y)| *x.max(y)).collect();
        let s1 = rewrite(&l, f);
        let s2 = rewrite(&l, g);
        if let Some(h) = reduce(s1, s2, &basis, ord) {
            let k = basis.len();
            basis.push(h);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    interreduce(basis, ord)
}

fn interreduce(mut basis: Vec<Bin>, ord: &TermOrder) -> Vec<Bin> {
    basis.sort_by(|a, b| ord.cmp(&a.lead, &b.lead));
    let mut minimal: Vec<Bin> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| divides(&h.lead, &g.lead)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Bin> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[i];
        let mut t = g.trail.clone();
        while let Some(h) = others.iter().find(|h| divides(&h.lead, &t)) {
            t = rewrite(&t, h);
        }
        out.push(Bin { lead: g.lead.clone(), trail: t });
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_chain_interreduces() {
        let gens = vec![(vec![1, 0, 0], vec![0, 1, 0]), (vec![0, 1, 0], vec![0, 0, 1])];
        let gb = groebner_basis(&gens, &TermOrder::graded(3));
        assert_eq!(
            gb,
            vec![
                Bin { lead: vec![0, 1, 0], trail: vec![0, 0, 1] },
                Bin { lead: vec![1, 0, 0], trail: vec![0, 0, 1] },
            ]
        );
    }

    #[test]
    fn orientation_follows_order() {
        let gb = groebner_basis(&[(vec![0, 2, 0], vec![1, 0, 1])], &TermOrder::graded(3));
        assert_eq!(gb, vec![Bin { lead: vec![1, 0, 1], trail: vec![0, 2, 0] }]);
    }
}
