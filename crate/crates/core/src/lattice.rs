//! Integer lattice machinery: Hermite and Smith forms, kernel lattices,
//! normalized volumes, primitive normals and cone-adapted lattice bases.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, nullspace, rank, solve, to_q_matrix};
use crate::number::{q, Q};

/// A `d x n` integer matrix of full row rank whose columns span `Z^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntegerMatrix {
    /// Validates rank `d` and that the columns generate `Z^d`.
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = Self::unchecked(rows)?;
        let d = m.d();
        if rank(&to_q_matrix(&m.rows)) != d {
            return Err(Error::InvalidMatrix(format!("rank is not {d}")));
        }
        let inv = smith_invariants(&m.rows);
        if inv.iter().any(|&x| x != 1) {
            return Err(Error::InvalidMatrix(format!(
                "columns do not span Z^{d}: invariant factors {inv:?}"
            )));
        }
        Ok(m)
    }

    /// Rectangular check only.
    pub fn unchecked(rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::InvalidMatrix("empty matrix".into()));
        }
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Ok(Self { rows })
    }

    pub fn identity(d: usize) -> Self {
        let rows = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        Self { rows }
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.n()).map(|j| self.column(j)).collect()
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> Vec<Vec<i64>> {
        self.columns()
    }
}

/// Row-style Hermite normal form: nonzero rows first, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hnf_rows(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (h, _) = hnf_with_transform(m);
    h.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect()
}

/// Hermite form `H = U M` with the unimodular transform `U`. Zero rows are
/// kept at the bottom of `H`.
pub fn hnf_with_transform(m: &[Vec<i64>]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let rows = m.len();
    if rows == 0 {
        return (Vec::new(), Vec::new());
    }
    let cols = m[0].len();
    let mut h: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd elimination down the column
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| h[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| h[i][c].abs()).unwrap();
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c] != 0 {
                    let f = h[i][c].div_euclid(h[r][c]);
                    let (hr, ur) = (h[r].clone(), u[r].clone());
                    for (x, y) in h[i].iter_mut().zip(&hr) {
                        *x -= f * y;
                    }
                    for (x, y) in u[i].iter_mut().zip(&ur) {
                        *x -= f * y;
                    }
                    if h[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][c] == 0 {
            continue;
        }
        if h[r][c] < 0 {
            for x in h[r].iter_mut() {
                *x = -*x;
            }
            for x in u[r].iter_mut() {
                *x = -*x;
            }
        }
        let (hr, ur) = (h[r].clone(), u[r].clone());
        for i in 0..r {
            let f = h[i][c].div_euclid(hr[c]);
            if f != 0 {
                for (x, y) in h[i].iter_mut().zip(&hr) {
                    *x -= f * y;
                }
                for (x, y) in u[i].iter_mut().zip(&ur) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
    }
    let cv = |m: Vec<Vec<i128>>| -> Vec<Vec<i64>> {
        m.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| i64::try_from(x).expect("integer overflow in Hermite form"))
                    .collect()
            })
            .collect()
    };
    (cv(h), cv(u))
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<i64> {
    if m.is_empty() || m[0].is_empty() {
        return Vec::new();
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let (rows, cols) = (a.len(), a[0].len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // choose smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut changed = false;
            for i in t + 1..rows {
                let f = a[i][t].div_euclid(p);
                if f != 0 {
                    let rt = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(&rt) {
                        *x -= f * y;
                    }
                }
                if a[i][t] != 0 {
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let f = a[t][j].div_euclid(p);
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                if a[t][j] != 0 {
                    changed = true;
                }
            }
            if !changed {
                // enforce divisibility of the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        let ri = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(&ri) {
                            *x += y;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move a smaller remainder into the pivot position
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(i64::try_from(a[t][t].abs()).expect("overflow in Smith form"));
        t += 1;
    }
    diag
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Scales a rational vector to a primitive integer vector.
pub fn primitive_integer_vector(v: &[Q]) -> Vec<i64> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<i64> = v
        .iter()
        .map(|x| {
            (x * Q::from_integer(lcm.clone()))
                .to_integer()
                .to_i64()
                .expect("overflow clearing denominators")
        })
        .collect();
    let g = gcd_vec(&ints);
    if g == 0 {
        return ints;
    }
    ints.into_iter().map(|x| x / g).collect()
}

fn sign_normalize(v: &mut [i64]) {
    if let Some(&f) = v.iter().find(|&&x| x != 0) {
        if f < 0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// A `Z`-basis `b_1, ..., b_m` of `ker_Z(A)`, stored as columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBasis {
    pub n: usize,
    /// Column vectors of length `n`.
    pub columns: Vec<Vec<i64>>,
}

impl KernelBasis {
    pub fn m(&self) -> usize {
        self.columns.len()
    }

    /// Row `j` of the `n x m` matrix, i.e. `B_j`.
    pub fn row(&self, j: usize) -> Vec<i64> {
        self.columns.iter().map(|c| c[j]).collect()
    }

    pub fn entry(&self, j: usize, k: usize) -> i64 {
        self.columns[k][j]
    }

    /// `B nu`.
    pub fn combine(&self, nu: &[i64]) -> Vec<i64> {
        let mut u = vec![0i64; self.n];
        for (c, &k) in self.columns.iter().zip(nu) {
            for (x, y) in u.iter_mut().zip(c) {
                *x += k * y;
            }
        }
        u
    }

    /// Coordinates `nu` with `B nu = u`, if `u` lies in the lattice.
    pub fn coordinates(&self, u: &[i64]) -> Option<Vec<i64>> {
        let m = self.m();
        if m == 0 {
            return u.iter().all(|&x| x == 0).then(Vec::new);
        }
        let mat: Vec<Vec<Q>> = (0..self.n)
            .map(|j| (0..m).map(|k| q(self.entry(j, k))).collect())
            .collect();
        let rhs: Vec<Q> = u.iter().map(|&x| q(x)).collect();
        let sol = solve(&mat, &rhs, m)?;
        sol.iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }
}

/// Canonical (Hermite-reduced) `Z`-basis of the integer kernel of `A`.
pub fn kernel_lattice_basis(a: &IntegerMatrix) -> KernelBasis {
    let n = a.n();
    let (h, u) = hnf_with_transform(&a.transpose());
    let raw: Vec<Vec<i64>> = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(|&x| x == 0))
        .map(|(_, urow)| urow)
        .collect();
    let columns = hnf_rows(&raw);
    KernelBasis { n, columns }
}

/// Rank over `Q` of a set of integer vectors.
pub fn rank_of(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&to_q_matrix(vectors))
}

/// Primitive integer normal to the hyperplane spanned by `vectors` in `Q^d`;
/// first nonzero coordinate positive.
pub fn primitive_normal(vectors: &[Vec<i64>], d: usize) -> Result<Vec<i64>> {
    let r = rank_of(vectors);
    if r + 1 != d {
        return Err(Error::NotCodimensionOne(d - r));
    }
    let ns = if vectors.is_empty() {
        vec![vec![Q::one(); d]]
    } else {
        nullspace(&to_q_matrix(vectors), d)
    };
    let mut n = primitive_integer_vector(&ns[0]);
    sign_normalize(&mut n);
    Ok(n)
}

/// Index `[Z A ∩ R F : Z F]` of the lattice generated by the face's columns
/// inside its saturation (the columns of `A` span `Z^d`).
pub fn lattice_index(a: &IntegerMatrix, face: &[usize]) -> i64 {
    if face.is_empty() {
        return 1;
    }
    let cols: Vec<Vec<i64>> = face.iter().map(|&j| a.column(j)).collect();
    smith_invariants(&cols).iter().product()
}

/// Coordinates of `points` in a `Z`-basis of the lattice they generate.
fn lattice_coordinates(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let basis = hnf_rows(points);
    let r = basis.len();
    let dim = points[0].len();
    let mat: Vec<Vec<Q>> = (0..dim)
        .map(|i| (0..r).map(|k| q(basis[k][i])).collect())
        .collect();
    points
        .iter()
        .map(|p| {
            let rhs: Vec<Q> = p.iter().map(|&x| q(x)).collect();
            solve(&mat, &rhs, r)
                .expect("point outside its own lattice")
                .iter()
                .map(|x| x.to_integer().to_i64().expect("overflow"))
                .collect()
        })
        .collect()
}

/// Maximal cells of the regular subdivision of the vector configuration
/// `vecs` (spanning `Q^k`, all on one side of an affine hyperplane) induced by
/// `heights`. A `k`-subset is a cell iff the linear function interpolating the
/// heights on it lies strictly below every other lifted vector. Returns
/// `Err(NotGenericWeight)` when some vector lies on a cell's supporting
/// hyperplane.
pub fn lower_hull_cells(vecs: &[Vec<i64>], heights: &[Q]) -> Result<Vec<Vec<usize>>> {
    let n = vecs.len();
    let k = vecs[0].len();
    let mut cells = Vec::new();
    for subset in combinations(n, k) {
        let m: Vec<Vec<Q>> = subset
            .iter()
            .map(|&j| vecs[j].iter().map(|&x| q(x)).collect())
            .collect();
        if determinant(&m).is_zero() {
            continue;
        }
        let h: Vec<Q> = subset.iter().map(|&j| heights[j].clone()).collect();
        let c = solve(&m, &h, k).expect("nonsingular system");
        let mut is_cell = true;
        let mut tie = None;
        for j in (0..n).filter(|j| !subset.contains(j)) {
            let val: Q = c.iter().zip(&vecs[j]).map(|(ci, &x)| ci * q(x)).sum();
            if val > heights[j] {
                is_cell = false;
                break;
            }
            if val == heights[j] {
                tie = Some(j);
            }
        }
        if is_cell {
            if let Some(j) = tie {
                return Err(Error::NotGenericWeight(format!(
                    "lifted point {j} lies on the lower facet through {subset:?}"
                )));
            }
            cells.push(subset);
        }
    }
    Ok(cells)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Normalized volume of `conv(F ∪ {0})` in the lattice `Z F`. For homogeneous
/// matrices this is the normalized volume of `conv(F)`; the empty face has
/// volume 1.
pub fn normalized_volume(a: &IntegerMatrix, face: &[usize]) -> u64 {
    let pts: Vec<Vec<i64>> = face
        .iter()
        .map(|&j| a.column(j))
        .filter(|c| c.iter().any(|&x| x != 0))
        .collect();
    if pts.is_empty() {
        return 1;
    }
    let coords = lattice_coordinates(&pts);
    polytope_volume_with_origin(&coords)
}

/// Normalized volume of `conv(points ∪ {0})` for full-dimensional integer
/// points in `Z^r`, via a generic regular triangulation.
fn polytope_volume_with_origin(points: &[Vec<i64>]) -> u64 {
    let r = points[0].len();
    let mut homog: Vec<Vec<i64>> = vec![std::iter::once(1).chain(vec![0; r]).collect()];
    for p in points {
        homog.push(std::iter::once(1).chain(p.iter().copied()).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..64 {
        let heights: Vec<Q> = (0..homog.len())
            .map(|_| Q::new(rng.gen_range(1..1_000_000i64).into(), rng.gen_range(1..1000i64).into()))
            .collect();
        if let Ok(cells) = lower_hull_cells(&homog, &heights) {
            return cells
                .iter()
                .map(|cell| {
                    let m: Vec<Vec<Q>> = cell
                        .iter()
                        .map(|&j| homog[j].iter().map(|&x| q(x)).collect())
                        .collect();
                    determinant(&m).abs().to_integer().to_u64().expect("volume overflow")
                })
                .sum();
        }
    }
    panic!("failed to find a generic lift for the volume computation");
}

/// Change-of-basis helper: rational inverse of a square integer matrix.
fn inverse_q(m: &[Vec<i64>]) -> Option<Vec<Vec<Q>>> {
    let k = m.len();
    let qm = to_q_matrix(m);
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let e: Vec<Q> = (0..k).map(|j| if i == j { Q::one() } else { Q::zero() }).collect();
        cols.push(solve(&qm, &e, k)?);
    }
    Some((0..k).map(|r| (0..k).map(|c| cols[c][r].clone()).collect()).collect())
}

/// A lattice basis adapted to a cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Basis vectors `lambda_i` in ambient coordinates.
    pub basis: Vec<Vec<i64>>,
    /// The dual lattice vectors `kappa_j` (in coordinates of the input
    /// lattice basis) whose nonnegativity region contains the cone.
    pub dual: Vec<Vec<i64>>,
}

/// `Z`-basis `lambda_1..lambda_m` of the lattice `L` (given by `lattice`
/// basis vectors in `R^m`) with `K ∩ L` inside the `N`-span of the basis, for
/// the pointed full-dimensional cone `K = cone(rays)`.
pub fn adapted_lattice_basis(rays: &[Vec<i64>], lattice: &[Vec<i64>]) -> Result<AdaptedBasis> {
    adapted_lattice_basis_with(rays, lattice, None)
}

/// As [`adapted_lattice_basis`]; when `functional` is given, additionally
/// requires `functional · lambda_i > 0` for every basis vector.
pub fn adapted_lattice_basis_with(
    rays: &[Vec<i64>],
    lattice: &[Vec<i64>],
    functional: Option<&[Q]>,
) -> Result<AdaptedBasis> {
    let m = lattice.len();
    if m == 0 {
        return Ok(AdaptedBasis { basis: Vec::new(), dual: Vec::new() });
    }
    // columns of `lmat` are the lattice basis vectors
    let lmat: Vec<Vec<i64>> = (0..m).map(|i| lattice.iter().map(|v| v[i]).collect()).collect();
    let linv = inverse_q(&lmat).ok_or(Error::Dimension("lattice is not full rank".into()))?;
    let rays_l: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| {
            let v: Vec<Q> = linv
                .iter()
                .map(|row| row.iter().zip(r).map(|(a, &b)| a * q(b)).sum())
                .collect();
            primitive_integer_vector(&v)
        })
        .collect();
    if rank_of(&rays_l) < m {
        return Err(Error::ConeNotFullDimensional);
    }
    let in_dual = |y: &[i64]| {
        rays_l
            .iter()
            .all(|c| c.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() >= 0)
    };
    let interior = |y: &[i64]| {
        rays_l
            .iter()
            .all(|c| c.iter().zip(y).map(|(a, b)| a * b).sum::<i64>() > 0)
    };
    let w_l: Option<Vec<Q>> = functional.map(|w| {
        (0..m)
            .map(|k| lattice[k].iter().zip(w).map(|(&b, wi)| wi * q(b)).sum())
            .collect()
    });
    let max_r = match m {
        1 => 4,
        2 => 8,
        3 => 4,
        _ => 2,
    };
    let mut pointed = false;
    for radius in 1..=max_r {
        let mut cands: Vec<Vec<i64>> = box_points(m, radius)
            .into_iter()
            .filter(|y| y.iter().any(|&x| x != 0) && gcd_vec(y) == 1 && in_dual(y))
            .collect();
        if cands.iter().any(|y| interior(y)) {
            pointed = true;
        }
        cands.sort_by_key(|y| (y.iter().map(|x| x.abs()).sum::<i64>(), std::cmp::Reverse(y.clone())));
        for subset in combinations(cands.len(), m) {
            let kappa: Vec<Vec<i64>> = subset.iter().map(|&i| cands[i].clone()).collect();
            let det = determinant(&to_q_matrix(&kappa));
            if det.abs() != Q::one() {
                continue;
            }
            // dual basis: mu = (kappa^T)^{-1} columns, i.e. rows of kappa^{-1} transposed
            let kinv = inverse_q(&kappa).expect("unimodular");
            let mu: Vec<Vec<i64>> = (0..m)
                .map(|i| (0..m).map(|r| kinv[r][i].to_integer().to_i64().unwrap()).collect())
                .collect();
            if let Some(w) = &w_l {
                let ok = mu
                    .iter()
                    .all(|mu_i| w.iter().zip(mu_i).map(|(a, &b)| a * q(b)).sum::<Q>() > Q::zero());
                if !ok {
                    continue;
                }
            }
            let basis: Vec<Vec<i64>> = mu
                .iter()
                .map(|mu_i| {
                    let len = lattice[0].len();
                    (0..len)
                        .map(|t| (0..m).map(|k| mu_i[k] * lattice[k][t]).sum())
                        .collect()
                })
                .collect();
            return Ok(AdaptedBasis { basis, dual: kappa });
        }
    }
    if !pointed {
        return Err(Error::ConeNotPointed);
    }
    Err(Error::NoAdaptedBasis(max_r))
}

fn box_points(m: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-radius..=radius).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}
