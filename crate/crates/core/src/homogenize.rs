//! Homogenization `rho(A)` of a possibly confluent configuration, lifted
//! parameters, preserved face invariants, and restriction to `x_0 = 1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::{lattice_index, normalized_volume, rank_of, IntegerMatrix};
use crate::number::{q, GQ, Q};
use crate::series::MixedSeries;
use crate::strata::{build_arrangement, stratum_index};
use crate::toric::is_homogeneous;
use crate::triangulation::{regular_triangulation, rho};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogenizedSystem {
    pub rho_a: IntegerMatrix,
    pub original: IntegerMatrix,
    pub lift_parameter: Option<GQ>,
}

pub fn homogenize_matrix(a: &IntegerMatrix) -> HomogenizedSystem {
    HomogenizedSystem { rho_a: rho(a), original: a.clone(), lift_parameter: None }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterLift {
    /// `(1, beta)`.
    pub rho_beta: Vec<GQ>,
    pub beta0: GQ,
    /// `(beta0, beta)`.
    pub lifted: Vec<GQ>,
    /// Number of samples drawn before one passed verification.
    pub attempts: usize,
}

fn sample_beta0(rng: &mut ChaCha8Rng) -> GQ {
    let whole: i64 = rng.gen_range(1_000..=10_000);
    let den: i64 = rng.gen_range(7..=97);
    let num: i64 = rng.gen_range(1..den);
    GQ::real(q(whole) + Q::new(num.into(), den.into()))
}

/// Lifts `beta` to `(beta0, beta)` with a seeded random `beta0`, resampling
/// until no condition of the `rho(A)` arrangement (for the triangulation
/// induced by `(0, w)`) that involves the `beta0` direction fires.
pub fn homogenize_parameter(a: &IntegerMatrix, w: &[Q], beta: &[GQ], seed: u64) -> Result<ParameterLift> {
    if beta.len() != a.d() {
        return Err(Error::Dimension(format!("parameter has length {}, expected {}", beta.len(), a.d())));
    }
    let ra = rho(a);
    let mut lift = vec![Q::from_integer(0.into())];
    lift.extend_from_slice(w);
    let arr = build_arrangement(&regular_triangulation(&ra, &lift)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rho_beta = vec![GQ::from_int(1)];
    rho_beta.extend_from_slice(beta);
    for attempts in 1..=64 {
        let beta0 = sample_beta0(&mut rng);
        let mut lifted = vec![beta0.clone()];
        lifted.extend_from_slice(beta);
        let report = stratum_index(&lifted, &arr)?;
        if report.flat_normals.iter().all(|n| n[0] == 0) {
            return Ok(ParameterLift { rho_beta, beta0, lifted, attempts });
        }
    }
    Err(Error::Inconsistent("no generic beta0 found in 64 samples".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceInvariants {
    pub codim: (usize, usize),
    pub volume: (u64, u64),
    pub index: (i64, i64),
}

impl FaceInvariants {
    pub fn preserved(&self) -> bool {
        self.codim.0 == self.codim.1 && self.volume.0 == self.volume.1 && self.index.0 == self.index.1
    }
}

/// Codimension, volume and lattice index of `face` in `A` and of
/// `rho(face) = {0} ∪ {j + 1 : j ∈ face}` in `rho(A)`.
pub fn face_invariants_preserved(a: &IntegerMatrix, face: &[usize]) -> FaceInvariants {
    let ra = rho(a);
    let rf: Vec<usize> = std::iter::once(0).chain(face.iter().map(|j| j + 1)).collect();
    let cols = |m: &IntegerMatrix, f: &[usize]| f.iter().map(|&j| m.column(j)).collect::<Vec<_>>();
    FaceInvariants {
        codim: (a.d() - rank_of(&cols(a, face)), ra.d() - rank_of(&cols(&ra, &rf))),
        volume: (normalized_volume(a, face), normalized_volume(&ra, &rf)),
        index: (lattice_index(a, face), lattice_index(&ra, &rf)),
    }
}

/// `2^{2d} vol(A)` for homogeneous `A`, `2^{2d+2} vol(A)` otherwise.
pub fn rank_upper_bound(a: &IntegerMatrix) -> u64 {
    let all: Vec<usize> = (0..a.n()).collect();
    let vol = normalized_volume(a, &all);
    let e = if is_homogeneous(a) { 2 * a.d() } else { 2 * a.d() + 2 };
    (1u64 << e) * vol
}

/// Sets `x_0 = 1`: drops coordinate 0 and every term with a positive power
/// of `log x_0`. Offsets in `ker rho(A)` satisfy `u_0 = -Σ u'`, so the weight
/// `w' - w_0 (1, ..., 1)` keeps every offset's weight and the truncation.
pub fn restrict_x0(psi: &MixedSeries) -> MixedSeries {
    let w0 = psi.weight[0].clone();
    let w: Vec<Q> = psi.weight[1..].iter().map(|x| x - &w0).collect();
    let mut out = MixedSeries::new(psi.base[1..].to_vec(), w, psi.truncation.clone());
    for ((u, d), c) in &psi.terms {
        if d[0] == 0 {
            out.add_term(u[1..].to_vec(), d[1..].to_vec(), c);
        }
    }
    out
}
