#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use gkz::homogenize::{face_invariants_preserved, homogenize_parameter, restrict_x0};
use gkz::horn::{dehomogenize, horn_coefficient, HornSystem};
use gkz::lattice::{combinations, KernelBasis};
use gkz::linalg::{rank, solve};
use gkz::number::{q, q_to_f64, qr, GQ, Q};
use gkz::series::MixedSeries;
use gkz::solver::{canonical_series, evaluate, perturb_exponent, residual, EvalMode};
use gkz::strata::{build_arrangement, stratum_index};
use gkz::triangulation::{regular_triangulation, rho};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Series in one variable: `(power of z, power of log z) -> coefficient`.
type ZSeries = BTreeMap<(i64, u32), Q>;

fn theta(f: &ZSeries, shift: &Q) -> ZSeries {
    let mut out = ZSeries::new();
    for (&(n, k), c) in f {
        *out.entry((n, k)).or_insert_with(Q::zero) += c * (q(n) + shift);
        if k > 0 {
            *out.entry((n, k - 1)).or_insert_with(Q::zero) += c * q(k as i64);
        }
    }
    out
}

/// `z L f` for the Gauss operator `L = z(1-z)∂² + (c - (a+b+1)z)∂ - ab`,
/// written as `θ(θ + c - 1) - z(θ + a)(θ + b)`.
fn gauss_operator(f: &ZSeries, a: &Q, b: &Q, c: &Q) -> ZSeries {
    let left = theta(&theta(f, &(c - q(1))), &Q::zero());
    let right = theta(&theta(f, b), a);
    let mut out = left;
    for (&(n, k), v) in &right {
        *out.entry((n + 1, k)).or_insert_with(Q::zero) -= v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Residual coefficients of `L f` at `z^0, ..., z^{t-2}`, i.e. of `z L f` at
/// `z^1, ..., z^{t-1}`, plus the constant term of `z L f`.
fn gauss_residual_ok(f: &ZSeries, a: &Q, b: &Q, c: &Q, t: i64) -> bool {
    gauss_operator(f, a, b, c).keys().all(|&(n, _)| n > t - 1)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (a, b, c) = (qr(1, 2), qr(1, 3), qr(1, 5));
    let t = 14usize;
    let sols = canonical_series(&gauss_matrix(), &gauss_beta(&a, &b, &c), &gauss_weight(), &q(t as i64))
        .map_err(|e| e.to_string())?;
    let alpha = gauss_alpha(&a, &b, &c);
    let s = sols
        .iter()
        .find(|s| s.base.iter().zip(&alpha).all(|(x, y)| (x - y).is_integer()))
        .ok_or("no series in the class of (c-1, -a, -b, 0)")?
        .rebase(&alpha)
        .map_err(|e| e.to_string())?;
    let f = dehomogenize(&s, &gauss_kernel()).map_err(|e| e.to_string())?;
    let f0 = f.coefficient(&[0], &[0]);
    let mut zs = ZSeries::new();
    for ((nu, d), v) in &f.terms {
        if d[0] != 0 || !v.is_real() {
            return Err("dehomogenized series has logarithms or complex coefficients".into());
        }
        zs.insert((nu[0], 0), (v / &f0).re);
    }
    let oracle = gauss_coefficients(&a, &b, &c, t);
    for (n, want) in oracle.iter().enumerate() {
        let got = zs.get(&(n as i64, 0)).cloned().unwrap_or_else(Q::zero);
        if &got != want {
            return Err(format!("coefficient of z^{n}: {got} != {want}"));
        }
    }
    let closed: ZSeries = oracle.iter().enumerate().map(|(n, v)| ((n as i64, 0), v.clone())).collect();
    if !gauss_residual_ok(&closed, &a, &b, &c, t as i64) {
        return Err("closed-form series leaves a residual below order T-1".into());
    }
    if !gauss_residual_ok(&zs, &a, &b, &c, t as i64) {
        return Err("solver series leaves a residual below order T-1".into());
    }
    let el = start.elapsed();
    if el > Duration::from_secs(1) {
        return Err(format!("took {el:?}"));
    }
    Ok(format!("{} coefficients exact, residual 0 through z^{}, {el:?}", t + 1, t - 2))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (a, b, c) = (qr(1, 2), qr(1, 3), q(1));
    let t = 14i64;
    let tn = gauss_coefficients(&a, &b, &c, t as usize);
    let mut fz = ZSeries::new();
    let mut gz = ZSeries::new();
    let mut harmonic = Q::zero();
    for n in 0..=t {
        let nu = n as usize;
        if n > 0 {
            let l = q(n - 1);
            harmonic += (&a + &l).recip() + (&b + &l).recip() - q(2) / (&l + q(1));
        }
        fz.insert((n, 0), tn[nu].clone());
        gz.insert((n, 1), tn[nu].clone());
        let d = &tn[nu] * &harmonic;
        if !d.is_zero() {
            gz.insert((n, 0), d);
        }
    }
    if !gauss_residual_ok(&fz, &a, &b, &c, t) || !gauss_residual_ok(&gz, &a, &b, &c, t) {
        return Err("closed-form pair leaves a residual below order T-1".into());
    }
    let sols = canonical_series(&gauss_matrix(), &gauss_beta(&a, &b, &c), &gauss_weight(), &q(t))
        .map_err(|e| e.to_string())?;
    if sols.len() != 2 {
        return Err(format!("{} canonical series, expected 2", sols.len()));
    }
    let alpha = gauss_alpha(&a, &b, &c);
    let mut lib = Vec::new();
    let mut horizon = t;
    for s in &sols {
        let f = dehomogenize(&s.rebase(&alpha).map_err(|e| e.to_string())?, &gauss_kernel())
            .map_err(|e| e.to_string())?;
        horizon = horizon.min(f.truncation.floor().to_integer().try_into().unwrap());
        lib.push(f);
    }
    if horizon < t - 2 {
        return Err(format!("solver series only complete through z^{horizon}"));
    }
    let mut keys: Vec<(i64, u32)> = fz.keys().chain(gz.keys()).cloned().collect();
    for f in &lib {
        keys.extend(f.terms.keys().map(|(nu, d)| (nu[0], d[0])));
    }
    keys.retain(|k| k.0 <= horizon);
    keys.sort();
    keys.dedup();
    let row = |get: &dyn Fn(&(i64, u32)) -> GQ| keys.iter().map(get).collect::<Vec<GQ>>();
    let oracle_rows = vec![
        row(&|k| g(&fz.get(k).cloned().unwrap_or_else(Q::zero))),
        row(&|k| g(&gz.get(k).cloned().unwrap_or_else(Q::zero))),
    ];
    let lib_rows: Vec<Vec<GQ>> = lib.iter().map(|f| row(&|k| f.coefficient(&[k.0], &[k.1]))).collect();
    let all: Vec<Vec<GQ>> = oracle_rows.iter().chain(&lib_rows).cloned().collect();
    let (r1, r2, r3) = (rank(&oracle_rows), rank(&lib_rows), rank(&all));
    if (r1, r2, r3) != (2, 2, 2) {
        return Err(format!("ranks oracle {r1}, solver {r2}, joint {r3}"));
    }
    let el = start.elapsed();
    if el > Duration::from_secs(5) {
        return Err(format!("took {el:?}"));
    }
    Ok(format!("closed form exact, spans agree through z^{horizon}, {el:?}"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Q {
    let den: i64 = rng.gen_range(2..=12);
    let num: i64 = rng.gen_range(-4 * den..=4 * den);
    qr(num, den)
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases = [(conic(), qs(&[1, 1, 3])), (gauss_matrix(), gauss_weight())];
    let t = q(4);
    for (a, w) in &cases {
        let arr = build_arrangement(&regular_triangulation(a, w).map_err(|e| e.to_string())?);
        let mut done = 0;
        while done < 20 {
            let beta: Vec<GQ> = (0..a.d()).map(|_| g(&random_rational(&mut rng))).collect();
            if stratum_index(&beta, &arr).map_err(|e| e.to_string())?.index != 0 {
                continue;
            }
            let sols = canonical_series(a, &beta, w, &t).map_err(|e| e.to_string())?;
            if sols.len() != 2 {
                return Err(format!("{} series at beta = {beta:?}", sols.len()));
            }
            for s in &sols {
                let r = residual(s, a, &beta).map_err(|e| e.to_string())?;
                if !r.is_zero() {
                    return Err(format!("residual {r} at beta = {beta:?}"));
                }
            }
            done += 1;
        }
    }
    Ok("40 generic parameters, 2 series each, all residuals 0".into())
}

fn criterion_4() -> Outcome {
    let mut spent = Duration::ZERO;
    let a = conic();
    let arr = build_arrangement(&regular_triangulation(&a, &qs(&[1, 1, 3])).map_err(|e| e.to_string())?);
    // The cells are {0,1} and {1,2}; every column is a codimension-one face.
    let faces: [[i64; 2]; 3] = [[1, 0], [1, 1], [1, 2]];
    let mut checked = 0;
    for p1 in -12..=12 {
        for p2 in -12..=12 {
            let beta = [qr(p1, 6), qr(p2, 6)];
            let mut hit = 0;
            for f in &faces {
                let on_translate = (-5..=5).any(|x: i64| {
                    (-5..=5).any(|y: i64| {
                        let d0 = &beta[0] - q(x);
                        let d1 = &beta[1] - q(y);
                        (d0 * q(f[1]) - d1 * q(f[0])).is_zero()
                    })
                });
                hit += on_translate as usize;
            }
            let want = hit.min(2);
            let start = Instant::now();
            let got = stratum_index(&[g(&beta[0]), g(&beta[1])], &arr).map_err(|e| e.to_string())?.index;
            spent += start.elapsed();
            if got != want {
                return Err(format!("beta = ({p1}/6, {p2}/6): index {got}, oracle {want}"));
            }
            checked += 1;
        }
    }
    if spent > Duration::from_secs(10) {
        return Err(format!("took {spent:?}"));
    }
    Ok(format!("{checked} parameters agree with the translate oracle, {spent:?}"))
}

/// `Π_{l < |b|} (B_j mu + alpha_j - l)` over the rows with `b_jk` of the given sign.
fn horn_side(b: &[i64], alpha: &[Q], mu: i64, positive: bool) -> Q {
    let mut acc = q(1);
    for (j, &bj) in b.iter().enumerate() {
        if (bj > 0) != positive || bj == 0 {
            continue;
        }
        for l in 0..bj.abs() {
            acc *= q(bj * mu - l) + &alpha[j];
        }
    }
    acc
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bases: [Vec<i64>; 2] = [vec![1, -2, 1], vec![1, -1, -1, 1]];
    let mut checked = 0;
    for b in &bases {
        for _ in 0..10 {
            let alpha: Vec<Q> = loop {
                let v: Vec<Q> = b.iter().map(|_| random_rational(&mut rng)).collect();
                if v.iter().all(|x| !x.is_integer()) {
                    break v;
                }
            };
            let h = HornSystem::new(
                KernelBasis { n: b.len(), columns: vec![b.clone()] },
                alpha.iter().map(g).collect(),
            )
            .map_err(|e| e.to_string())?;
            for mu in 0..=8i64 {
                let r0 = horn_coefficient(&h, &[mu]).map_err(|e| e.to_string())?;
                let r1 = horn_coefficient(&h, &[mu + 1]).map_err(|e| e.to_string())?;
                let lhs = &g(&horn_side(b, &alpha, mu + 1, false)) * &r1;
                let rhs = &g(&horn_side(b, &alpha, mu, true)) * &r0;
                if lhs != rhs {
                    return Err(format!("B = {b:?}, alpha = {alpha:?}, mu = {mu}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} recurrence instances exact"))
}

fn criterion_6() -> Outcome {
    let matrices = [
        conic(),
        gauss_matrix(),
        mat(&[&[1, 2]]),
        mat(&[&[1, 2, 3]]),
        mat(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]),
        mat(&[&[1, 0, 1, 2], &[0, 1, 1, 0]]),
        mat(&[&[1, 1, 1, 1, 1], &[0, 1, 0, 1, 2], &[0, 0, 1, 1, 0]]),
        mat(&[&[1, 1, 1, 1, 1, 1], &[0, 1, 2, 0, 1, 0], &[0, 0, 0, 1, 1, 2]]),
        mat(&[&[1, 0, 2, 1, 3], &[0, 1, 1, 2, 1]]),
    ];
    let mut checked = 0;
    for a in &matrices {
        for k in 0..=a.n() {
            for face in combinations(a.n(), k) {
                let inv = face_invariants_preserved(a, &face);
                if !inv.preserved() {
                    return Err(format!("A = {:?}, face {face:?}: {inv:?}", a.rows()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} faces over {} matrices", matrices.len()))
}

/// Rank of a family of series as functions: coefficients keyed by full
/// exponent and log degree.
fn function_rank(series: &[MixedSeries]) -> usize {
    let key = |s: &MixedSeries, u: &[i64], d: &[u32]| {
        let e: Vec<String> = s.exponent(u).iter().map(|x| x.to_string()).collect();
        (e, d.to_vec())
    };
    let mut keys: Vec<(Vec<String>, Vec<u32>)> = Vec::new();
    for s in series {
        keys.extend(s.terms.keys().map(|(u, d)| key(s, u, d)));
    }
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<GQ>> = series
        .iter()
        .map(|s| {
            let m: BTreeMap<_, _> = s.terms.iter().map(|((u, d), c)| (key(s, u, d), c.clone())).collect();
            keys.iter().map(|k| m.get(k).cloned().unwrap_or_else(GQ::zero)).collect()
        })
        .collect();
    rank(&rows)
}

fn criterion_7() -> Outcome {
    let a = mat(&[&[1, 2]]);
    let ra = rho(&a);
    let w = qs(&[1, 1]);
    let rho_w = vec![qr(1, 10), q(1), q(1)];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = Q::zero();
    let mut independent = 0;
    for seed in 0..10u64 {
        let beta = vec![g(&random_rational(&mut rng))];
        let lift = homogenize_parameter(&a, &w, &beta, seed).map_err(|e| e.to_string())?;
        let sols = canonical_series(&ra, &lift.lifted, &rho_w, &q(6)).map_err(|e| e.to_string())?;
        let restricted: Vec<MixedSeries> = sols.iter().map(restrict_x0).collect();
        for r in &restricted {
            worst = worst.max(residual(r, &a, &beta).map_err(|e| e.to_string())?);
        }
        if function_rank(&restricted) == sols.len() && !sols.is_empty() {
            independent += 1;
        }
    }
    let summary = format!("restrictions independent in {independent}/10 cases, max residual {:.3e}", q_to_f64(&worst));
    if worst.is_zero() && independent == 10 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

/// Fits `N(e)/D(e)` with `deg N = p`, `deg D = q`, `D(0) = 1` through the
/// samples, if possible.
fn rational_fit(samples: &[(GQ, GQ)], p: usize, qd: usize) -> Option<(Vec<GQ>, Vec<GQ>)> {
    let m: Vec<Vec<GQ>> = samples
        .iter()
        .map(|(e, y)| {
            let mut row: Vec<GQ> = (0..=p).map(|k| e.pow(k as u32)).collect();
            row.extend((1..=qd).map(|k| -(y * &e.pow(k as u32))));
            row
        })
        .collect();
    let rhs: Vec<GQ> = samples.iter().map(|(_, y)| y.clone()).collect();
    let x = solve(&m, &rhs, p + 1 + qd)?;
    let mut den = vec![GQ::one()];
    den.extend_from_slice(&x[p + 1..]);
    Some((x[..=p].to_vec(), den))
}

fn eval_poly(c: &[GQ], e: &GQ) -> GQ {
    c.iter().rev().fold(GQ::zero(), |acc, x| &(&acc * e) + x)
}

fn gauss_resonant() -> Result<(MixedSeries, Vec<GQ>), String> {
    let (a, b, c) = (qr(1, 2), qr(1, 3), q(1));
    let beta = gauss_beta(&a, &b, &c);
    let sols = canonical_series(&gauss_matrix(), &beta, &gauss_weight(), &q(14)).map_err(|e| e.to_string())?;
    let s = sols.into_iter().find(|s| s.max_log_degree() == 1).ok_or("no logarithmic series")?;
    Ok((s, beta))
}

fn criterion_8() -> Outcome {
    let (s, _) = gauss_resonant()?;
    let j = 1;
    let eps: Vec<GQ> = [7, 11, 13, 17, 19].iter().map(|&d| GQ::from_ratio(1, d)).collect();
    let mut variants = Vec::new();
    for e in &eps {
        let v = perturb_exponent(&gauss_matrix(), &s, j, &(&s.base[j] + e)).map_err(|e| e.to_string())?;
        variants.push(v);
    }
    let keys: Vec<(Vec<i64>, Vec<u32>)> = s
        .terms
        .keys()
        .filter(|(u, _)| s.offset_weight(u) <= q(2))
        .cloned()
        .collect();
    let mut cap = 0;
    for (u, d) in &keys {
        let values: Vec<(GQ, GQ)> = eps
            .iter()
            .zip(&variants)
            .map(|(e, v)| (e.clone(), v.coefficient(u, d)))
            .collect();
        let fit = (0..=3usize)
            .flat_map(|tot| (0..=tot).map(move |p| (p, tot - p)))
            .find_map(|(p, qd)| rational_fit(&values[..4], p, qd).map(|f| (p + qd, f)));
        let Some((deg, (num, den))) = fit else {
            return Err(format!("no rational fit for offset {u:?}, log {d:?}"));
        };
        let (e5, y5) = &values[4];
        let dv = eval_poly(&den, e5);
        if dv.is_zero() || &(&eval_poly(&num, e5) / &dv) != y5 {
            return Err(format!("fit of degree {deg} for offset {u:?}, log {d:?} mispredicts the fifth sample"));
        }
        cap = cap.max(deg);
    }
    Ok(format!("{} coefficients predicted exactly, total degree <= {cap}", keys.len()))
}

fn criterion_9() -> Outcome {
    let (s, _) = gauss_resonant()?;
    let x: Vec<Complex64> = [0.1, 1.0, 1.0, 0.5].iter().map(|&r| Complex64::new(r, 0.0)).collect();
    let tol = 1e-12;
    let exact = evaluate(&s, &x, EvalMode::Plain, tol).map_err(|e| e.to_string())?.value;
    let mut gaps = Vec::new();
    for k in 1..=6u32 {
        let e = GQ::real(Q::new(1.into(), num_bigint::BigInt::from(10).pow(k)));
        let v = perturb_exponent(&gauss_matrix(), &s, 1, &(&s.base[1] + &e)).map_err(|e| e.to_string())?;
        let val = evaluate(&v, &x, EvalMode::Plain, tol).map_err(|e| e.to_string())?.value;
        gaps.push((val - exact).norm());
    }
    let monotone = gaps.windows(2).all(|p| p[1] <= p[0]);
    let last = *gaps.last().unwrap();
    let summary = format!("|f(10^-k) - f(0)| = {:?}", gaps.iter().map(|g| format!("{g:.2e}")).collect::<Vec<_>>());
    if monotone && last < 1e-6 {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("gauss regression", criterion_1),
        ("gauss logarithmic case", criterion_2),
        ("solution count equals volume", criterion_3),
        ("stratification oracle", criterion_4),
        ("horn recurrence identity", criterion_5),
        ("homogenization invariants", criterion_6),
        ("confluent reduction", criterion_7),
        ("parametric rationality", criterion_8),
        ("numeric continuity", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} ({name}): PASS - {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
