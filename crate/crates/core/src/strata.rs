//! Parameter stratification by integer translates of codimension-one face
//! spans of a regular triangulation.

use crate::error::{Error, Result};
use crate::lattice::{primitive_normal, rank_of};
use crate::number::{dot_int, GQ};
use crate::triangulation::{codim1_faces, Triangulation};

/// `n · beta ∈ Z`, one per distinct hyperplane `H_sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementCondition {
    pub normal: Vec<i64>,
    pub source_faces: Vec<Vec<usize>>,
}

impl ArrangementCondition {
    pub fn fires(&self, beta: &[GQ]) -> bool {
        dot_int(&self.normal, beta).is_integer()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub index: usize,
    pub flat_normals: Vec<Vec<i64>>,
    pub flat_codim: usize,
}

/// One condition per distinct hyperplane spanned by a codimension-one face.
/// Faces whose span is not a hyperplane (possible only in the inhomogeneous
/// case, for faces avoiding the origin) contribute nothing.
pub fn build_arrangement(t: &Triangulation) -> Vec<ArrangementCondition> {
    let d = if t.inhomogeneous { t.dim() - 1 } else { t.dim() };
    let mut out: Vec<ArrangementCondition> = Vec::new();
    for face in codim1_faces(t) {
        let vecs = t.face_vectors(&face);
        let Ok(normal) = primitive_normal(&vecs, d) else {
            continue;
        };
        match out.iter_mut().find(|c| c.normal == normal) {
            Some(c) => c.source_faces.push(face),
            None => out.push(ArrangementCondition { normal, source_faces: vec![face] }),
        }
    }
    out.sort_by(|a, b| a.normal.cmp(&b.normal));
    out
}

/// Codimension of the flat cut out by the conditions that fire at `beta`.
pub fn stratum_index(beta: &[GQ], arrangement: &[ArrangementCondition]) -> Result<StratumReport> {
    if let Some(c) = arrangement.first() {
        if c.normal.len() != beta.len() {
            return Err(Error::Dimension(format!(
                "parameter has length {}, arrangement lives in dimension {}",
                beta.len(),
                c.normal.len()
            )));
        }
    }
    let fired: Vec<Vec<i64>> = arrangement
        .iter()
        .filter(|c| c.fires(beta))
        .map(|c| c.normal.clone())
        .collect();
    let codim = rank_of(&fired);
    Ok(StratumReport { index: codim, flat_normals: fired, flat_codim: codim })
}
