//! Regular triangulations induced by weight vectors.
//!
//! Cells are column-index sets (0-based). For the inhomogeneous variant the
//! configuration is `rho(A)`, whose column `0` is the lifted origin and whose
//! column `j + 1` is `a_j`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::lattice::{combinations, lower_hull_cells, normalized_volume, rank_of, IntegerMatrix};
use crate::linalg::{determinant, solve};
use crate::number::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub maximal_simplices: Vec<Vec<usize>>,
    pub lift: Vec<Q>,
    /// The vector configuration that was triangulated.
    pub ambient: IntegerMatrix,
    /// True when `ambient` is `rho(A)` and cells triangulate `conv({0} ∪ A)`.
    pub inhomogeneous: bool,
}

/// Per-cell certificate: the linear functional interpolating the lift on
/// the cell, and the smallest gap to a lifted point off the cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCertificate {
    pub cell: Vec<usize>,
    pub functional: Vec<Q>,
    pub min_gap: Option<Q>,
}

impl Triangulation {
    /// Rank of the ambient configuration.
    pub fn dim(&self) -> usize {
        self.ambient.d()
    }

    /// Vectors whose linear spans define the stratification hyperplanes.
    pub fn face_vectors(&self, face: &[usize]) -> Vec<Vec<i64>> {
        face.iter()
            .map(|&j| {
                let c = self.ambient.column(j);
                if self.inhomogeneous {
                    c[1..].to_vec()
                } else {
                    c
                }
            })
            .collect()
    }

    pub fn regularity_certificate(&self) -> Vec<CellCertificate> {
        let cols = self.ambient.columns();
        let d = self.dim();
        self.maximal_simplices
            .iter()
            .map(|cell| {
                let m: Vec<Vec<Q>> = cell.iter().map(|&j| cols[j].iter().map(|&x| q(x)).collect()).collect();
                let h: Vec<Q> = cell.iter().map(|&j| self.lift[j].clone()).collect();
                let c = solve(&m, &h, d).expect("cell columns are independent");
                let min_gap = (0..cols.len())
                    .filter(|j| !cell.contains(j))
                    .map(|j| {
                        let v: Q = c.iter().zip(&cols[j]).map(|(ci, &x)| ci * q(x)).sum();
                        &self.lift[j] - v
                    })
                    .min();
                CellCertificate { cell: cell.clone(), functional: c, min_gap }
            })
            .collect()
    }

    /// Exact check of independence, strict regularity and volume additivity.
    pub fn verify(&self) -> bool {
        let d = self.dim();
        let independent = self.maximal_simplices.iter().all(|s| {
            s.len() == d && rank_of(&s.iter().map(|&j| self.ambient.column(j)).collect::<Vec<_>>()) == d
        });
        let strict = self
            .regularity_certificate()
            .iter()
            .all(|c| c.min_gap.as_ref().is_none_or(|g| *g > Q::from_integer(0.into())));
        let all: Vec<usize> = (0..self.ambient.n()).collect();
        let total: u64 = self
            .maximal_simplices
            .iter()
            .map(|s| {
                let m: Vec<Vec<Q>> = s.iter().map(|&j| self.ambient.column(j).into_iter().map(q).collect()).collect();
                determinant(&m).abs().to_integer().try_into().unwrap_or(0u64)
            })
            .sum();
        independent && strict && total == normalized_volume(&self.ambient, &all)
    }
}

/// Regular triangulation of the configuration `A` lifted by `w`.
pub fn regular_triangulation(a: &IntegerMatrix, w: &[Q]) -> Result<Triangulation> {
    if w.len() != a.n() {
        return Err(Error::Dimension(format!("weight has length {}, expected {}", w.len(), a.n())));
    }
    let cells = lower_hull_cells(&a.columns(), w)?;
    Ok(Triangulation {
        maximal_simplices: cells,
        lift: w.to_vec(),
        ambient: a.clone(),
        inhomogeneous: false,
    })
}

/// `rho(A)`: prepend the zero column, then a row of ones.
pub fn rho(a: &IntegerMatrix) -> IntegerMatrix {
    let mut rows = vec![vec![1i64; a.n() + 1]];
    for r in a.rows() {
        let mut row = vec![0];
        row.extend_from_slice(r);
        rows.push(row);
    }
    IntegerMatrix::new(rows).expect("homogenization of a valid matrix is valid")
}

/// Triangulation of `conv({0, a_1, ..., a_n})` induced by `(0, w)`.
pub fn inhomogeneous_triangulation(a: &IntegerMatrix, w: &[Q]) -> Result<Triangulation> {
    if w.len() != a.n() {
        return Err(Error::Dimension(format!("weight has length {}, expected {}", w.len(), a.n())));
    }
    let r = rho(a);
    let mut lift = vec![Q::from_integer(0.into())];
    lift.extend_from_slice(w);
    let cells = lower_hull_cells(&r.columns(), &lift)?;
    Ok(Triangulation { maximal_simplices: cells, lift, ambient: r, inhomogeneous: true })
}

/// All `(d-1)`-element faces of maximal simplices. In `d = 1` this is the
/// single empty face.
pub fn codim1_faces(t: &Triangulation) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for s in &t.maximal_simplices {
        for sub in combinations(s.len(), s.len() - 1) {
            let f: Vec<usize> = sub.iter().map(|&i| s[i]).collect();
            if !faces.contains(&f) {
                faces.push(f);
            }
        }
    }
    faces.sort();
    faces
}
