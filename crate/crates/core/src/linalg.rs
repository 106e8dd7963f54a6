//! Dense exact linear algebra over a field (rationals or Gaussian rationals).

use num_traits::{One, Zero};

use crate::number::{GQ, Q};

pub trait Field: Clone + PartialEq + Zero + One {
    fn add_f(&self, o: &Self) -> Self;
    fn sub_f(&self, o: &Self) -> Self;
    fn mul_f(&self, o: &Self) -> Self;
    fn div_f(&self, o: &Self) -> Self;
    fn neg_f(&self) -> Self {
        Self::zero().sub_f(self)
    }
}

impl Field for Q {
    fn add_f(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_f(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_f(&self, o: &Self) -> Self {
        self * o
    }
    fn div_f(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for GQ {
    fn add_f(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_f(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_f(&self, o: &Self) -> Self {
        self * o
    }
    fn div_f(&self, o: &Self) -> Self {
        self / o
    }
}

/// In-place reduced row echelon form. Only the first `ncols_pivot` columns
/// are eligible as pivots; the remaining columns are carried along.
/// Returns the pivot columns in row order.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols_pivot: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols_pivot {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one().div_f(&m[r][c]);
        if !inv.is_one() {
            for x in m[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul_f(&inv);
                }
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.sub_f(&f.mul_f(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut w = m.to_vec();
    let n = w[0].len();
    rref(&mut w, n).len()
}

/// Basis of the right null space of `m` (vectors `x` with `m x = 0`).
pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = w[r][free].neg_f();
        }
        basis.push(v);
    }
    basis
}

/// Solves `m x = b`; returns one solution or `None` if inconsistent.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F], ncols: usize) -> Option<Vec<F>> {
    let mut aug: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, ncols);
    for row in aug.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}

pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut w = m.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            w.swap(p, c);
            det = det.neg_f();
        }
        det = det.mul_f(&w[c][c]);
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let f = w[i][c].div_f(&w[c][c]);
            for j in c..n {
                let t = f.mul_f(&w[c][j]);
                w[i][j] = w[i][j].sub_f(&t);
            }
        }
    }
    det
}

pub fn to_q_matrix(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|&x| crate::number::q(x)).collect())
        .collect()
}
