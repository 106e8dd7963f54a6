#![allow(dead_code)]

use gkz::lattice::{IntegerMatrix, KernelBasis};
use gkz::number::{q, GQ, Q};
use num_traits::Zero;

pub fn mat(rows: &[&[i64]]) -> IntegerMatrix {
    IntegerMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

pub fn qs(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn g(x: &Q) -> GQ {
    GQ::real(x.clone())
}

pub fn gr(num: i64, den: i64) -> GQ {
    GQ::from_ratio(num, den)
}

pub fn conic() -> IntegerMatrix {
    mat(&[&[1, 1, 1], &[0, 1, 2]])
}

pub fn conic_weight() -> Vec<Q> {
    qs(&[1, 1, 3])
}

pub fn gauss_matrix() -> IntegerMatrix {
    mat(&[&[1, 1, 1, 1], &[0, 0, 1, 1], &[0, 1, 0, 1]])
}

pub fn gauss_weight() -> Vec<Q> {
    qs(&[1, 1, 1, 2])
}

pub fn gauss_kernel() -> KernelBasis {
    KernelBasis { n: 4, columns: vec![vec![1, -1, -1, 1]] }
}

/// Exponent of `x_0^{c-1} x_1^{-a} x_2^{-b} 2F1(a, b; c; x_0 x_3 / (x_1 x_2))`.
pub fn gauss_alpha(a: &Q, b: &Q, c: &Q) -> Vec<GQ> {
    vec![g(&(c - q(1))), g(&-a), g(&-b), GQ::zero()]
}

pub fn gauss_beta(a: &Q, b: &Q, c: &Q) -> Vec<GQ> {
    vec![g(&(c - q(1) - a - b)), g(&-b), g(&-a)]
}

/// Coefficients of `z^0, ..., z^t` in `2F1(a, b; c; z)`.
pub fn gauss_coefficients(a: &Q, b: &Q, c: &Q, t: usize) -> Vec<Q> {
    let mut out = vec![q(1)];
    for n in 0..t {
        let l = q(n as i64);
        let next = &out[n] * (a + &l) * (b + &l) / ((c + &l) * (&l + q(1)));
        out.push(next);
    }
    out
}
