//! Command dispatch behind the `gkz` binary. Every command maps a
//! [`JobSpec`] to a JSON document.

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homogenize::{face_invariants_preserved, homogenize_matrix, homogenize_parameter, rank_upper_bound, restrict_x0};
use crate::horn::{horn_coefficient, horn_polynomials, horn_series, multi_indices, HornSystem, LinearFactor};
use crate::json::{gq_vec_json, GqJson, parse_gq_vec, parse_q_vec, q_vec_json, JobSpec, SeriesJson};
use crate::lattice::{combinations, kernel_lattice_basis, normalized_volume, IntegerMatrix, KernelBasis};
use crate::number::{fmt_q, parse_q, GQ, Q};
use crate::solver::{
    canonical_series_with, evaluate, log_free_series, minimal_negative_support, residual, scan_exponents, EvalMode,
    SeriesSetup,
};
use crate::strata::{build_arrangement, stratum_index};
use crate::toric::is_homogeneous;
use crate::triangulation::{codim1_faces, inhomogeneous_triangulation, regular_triangulation, Triangulation};

pub const COMMANDS: [&str; 9] =
    ["analyze", "triangulate", "strata", "exponents", "series", "verify", "horn", "evaluate", "homogenize"];

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    /// Overrides the job's truncation.
    pub truncation: Option<String>,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self { truncation: None, seed: 0, tolerance: 1e-12 }
    }
}

/// Process exit code for an error: 1 for malformed input, 2 for domain errors.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 1,
        _ => 2,
    }
}

pub fn error_document(e: &Error) -> Value {
    json!({ "error": { "kind": e.kind(), "message": e.to_string() } })
}

pub fn run(command: &str, job: &JobSpec, opts: &Options) -> Result<Value> {
    let mut job = job.clone();
    if let Some(t) = &opts.truncation {
        job.truncation = Some(t.clone());
    }
    let a = IntegerMatrix::new(job.matrix.clone())?;
    match command {
        "analyze" => analyze(&a),
        "triangulate" => triangulate(&a, &job),
        "strata" => strata(&a, &job),
        "exponents" => exponents(&a, &job),
        "series" => series(&a, &job),
        "verify" => verify(&a, &job),
        "horn" => horn(&a, &job),
        "evaluate" => evaluate_cmd(&job, opts),
        "homogenize" => homogenize(&a, &job, opts),
        other => Err(Error::Parse(format!("unknown command {other:?}"))),
    }
}

fn analyze(a: &IntegerMatrix) -> Result<Value> {
    let all: Vec<usize> = (0..a.n()).collect();
    Ok(json!({
        "d": a.d(),
        "n": a.n(),
        "homogeneous": is_homogeneous(a),
        "kernel_basis": kernel_lattice_basis(a).columns,
        "volume": normalized_volume(a, &all),
        "rank_bound": rank_upper_bound(a),
    }))
}

fn triangulation_for(a: &IntegerMatrix, job: &JobSpec) -> Result<Triangulation> {
    let w = job.weight()?;
    if job.inhomogeneous.unwrap_or(!is_homogeneous(a)) {
        inhomogeneous_triangulation(a, &w)
    } else {
        regular_triangulation(a, &w)
    }
}

fn triangulate(a: &IntegerMatrix, job: &JobSpec) -> Result<Value> {
    let t = triangulation_for(a, job)?;
    let cert: Vec<Value> = t
        .regularity_certificate()
        .iter()
        .map(|c| {
            json!({
                "cell": c.cell,
                "functional": q_vec_json(&c.functional),
                "min_gap": c.min_gap.as_ref().map(fmt_q),
            })
        })
        .collect();
    Ok(json!({
        "inhomogeneous": t.inhomogeneous,
        "maximal_simplices": t.maximal_simplices,
        "codim1_faces": codim1_faces(&t),
        "certificate": cert,
        "verified": t.verify(),
    }))
}

fn strata(a: &IntegerMatrix, job: &JobSpec) -> Result<Value> {
    let arr = build_arrangement(&triangulation_for(a, job)?);
    let report = |beta: &[GQ]| -> Result<Value> {
        let r = stratum_index(beta, &arr)?;
        Ok(json!({
            "parameter": gq_vec_json(beta),
            "index": r.index,
            "flat_normals": r.flat_normals,
            "flat_codim": r.flat_codim,
        }))
    };
    let conditions: Vec<Value> = arr
        .iter()
        .map(|c| json!({ "normal": c.normal, "source_faces": c.source_faces }))
        .collect();
    if let Some(many) = &job.parameters {
        let reports = many
            .iter()
            .enumerate()
            .map(|(i, b)| report(&parse_gq_vec(b, &format!("parameters[{i}]"))?))
            .collect::<Result<Vec<_>>>()?;
        return Ok(json!({ "arrangement": conditions, "reports": reports }));
    }
    let mut doc = report(&job.parameter()?)?;
    doc["arrangement"] = json!(conditions);
    Ok(doc)
}

fn exponents(a: &IntegerMatrix, job: &JobSpec) -> Result<Value> {
    let w = job.weight()?;
    let beta = job.parameter()?;
    let t = job.truncation()?;
    let scan = scan_exponents(a, &beta, &w)?;
    let list = scan
        .exponents
        .iter()
        .map(|e| {
            Ok(json!({
                "alpha": gq_vec_json(&e.alpha),
                "sigma": e.sigma,
                "source_pair": { "root": e.source_pair.root, "face": e.source_pair.face },
                "multiplicity": e.multiplicity,
                "minimal_negative_support": minimal_negative_support(&e.alpha, a, &w, &t)?,
            }))
        })
        .collect::<Result<Vec<Value>>>()?;
    let bad: Vec<Value> = scan
        .inconsistent
        .iter()
        .map(|p| json!({ "root": p.root, "face": p.face }))
        .collect();
    Ok(json!({ "exponents": list, "inconsistent_pairs": bad, "mns_bound": fmt_q(&t) }))
}

fn series(a: &IntegerMatrix, job: &JobSpec) -> Result<Value> {
    let w = job.weight()?;
    let beta = job.parameter()?;
    let t = job.truncation()?;
    let out = match job.method.as_deref().unwrap_or("canonical") {
        "canonical" => {
            if !is_homogeneous(a) {
                return Err(Error::NotHomogeneous);
            }
            canonical_series_with(&SeriesSetup::new(a, &w)?, &beta, &t)?
        }
        "log_free" => {
            let mut v = Vec::new();
            for e in scan_exponents(a, &beta, &w)?.exponents {
                if minimal_negative_support(&e.alpha, a, &w, &t)? {
                    v.push(log_free_series(&e.alpha, a, &w, &t)?);
                }
            }
            v
        }
        m => return Err(Error::Parse(format!("method: unknown value {m:?}"))),
    };
    let doc = JobSpec {
        matrix: job.matrix.clone(),
        weight: job.weight.clone(),
        parameter: job.parameter.clone(),
        truncation: job.truncation.clone(),
        series: Some(out.iter().map(SeriesJson::from).collect()),
        ..JobSpec::default()
    };
    Ok(serde_json::to_value(doc).expect("serializable"))
}

fn verify(a: &IntegerMatrix, job: &JobSpec) -> Result<Value> {
    let beta = job.parameter()?;
    let mut worst = Q::from_integer(0.into());
    let mut each = Vec::new();
    for s in job.series()? {
        let r = residual(&s, a, &beta)?;
        each.push(fmt_q(&r));
        worst = worst.max(r);
    }
    Ok(json!({ "residual": fmt_q(&worst), "per_series": each }))
}

fn horn(a: &IntegerMatrix, job: &JobSpec) -> Result<Value> {
    let alpha = parse_gq_vec(
        job.alpha.as_ref().ok_or_else(|| Error::Parse("missing field `alpha`".into()))?,
        "alpha",
    )?;
    let b = match &job.basis {
        Some(cols) => {
            if cols.iter().any(|c| c.len() != a.n()) {
                return Err(Error::Parse(format!("basis: columns must have length {}", a.n())));
            }
            KernelBasis { n: a.n(), columns: cols.clone() }
        }
        None => kernel_lattice_basis(a),
    };
    let h = HornSystem::new(b, alpha)?;
    let t = job.truncation()?;
    let polys: Vec<Value> = (0..h.m())
        .map(|k| {
            let (p, q) = horn_polynomials(&h, k);
            let f = |v: &[LinearFactor]| {
                v.iter()
                    .map(|x| json!({ "row": x.row, "constant": GqJson::from(&x.constant()) }))
                    .collect::<Vec<_>>()
            };
            json!({ "k": k, "P": f(&p), "Q": f(&q) })
        })
        .collect();
    match horn_series(&h, &t) {
        Ok(s) => Ok(json!({ "polynomials": polys, "series": SeriesJson::from(&s), "pole": Value::Null })),
        Err(Error::PoleHit(msg)) => {
            let total = t.floor().to_integer().try_into().unwrap_or(0i64);
            let first = multi_indices(h.m(), total)
                .into_iter()
                .filter(|mu| horn_coefficient(&h, mu).is_err())
                .min_by_key(|mu| mu.iter().sum::<i64>());
            Ok(json!({ "polynomials": polys, "series": Value::Null, "pole": msg, "pole_at": first }))
        }
        Err(e) => Err(e),
    }
}

fn evaluate_cmd(job: &JobSpec, opts: &Options) -> Result<Value> {
    let x: Vec<Complex64> = job
        .point
        .as_ref()
        .ok_or_else(|| Error::Parse("missing field `point`".into()))?
        .iter()
        .map(|p| Complex64::new(p.re, p.im))
        .collect();
    let mode = match job.mode.as_deref().unwrap_or("plain") {
        "plain" => EvalMode::Plain,
        "gamma_normalized" => EvalMode::GammaNormalized,
        m => return Err(Error::Parse(format!("mode: unknown value {m:?}"))),
    };
    let mut values = Vec::new();
    for s in job.series()? {
        let v = match evaluate(&s, &x, mode, opts.tolerance) {
            Ok(e) => json!({ "re": e.value.re, "im": e.value.im, "last_shell": e.last_shell, "converged": true }),
            Err(Error::ConvergenceWarning { re, im, last_shell, .. }) => {
                json!({ "re": re, "im": im, "last_shell": last_shell, "converged": false })
            }
            Err(e) => return Err(e),
        };
        values.push(v);
    }
    Ok(json!({ "values": values, "tolerance": opts.tolerance }))
}

fn homogenize(a: &IntegerMatrix, job: &JobSpec, opts: &Options) -> Result<Value> {
    let h = homogenize_matrix(a);
    let w = job.weight()?;
    let beta = job.parameter()?;
    let lift = homogenize_parameter(a, &w, &beta, opts.seed)?;
    let faces_ok = (0..=a.n())
        .flat_map(|k| combinations(a.n(), k))
        .all(|f| face_invariants_preserved(a, &f).preserved());
    let mut doc = json!({
        "rho_matrix": h.rho_a.rows(),
        "rho_parameter": gq_vec_json(&lift.rho_beta),
        "beta0": GqJson::from(&lift.beta0),
        "lifted_parameter": gq_vec_json(&lift.lifted),
        "attempts": lift.attempts,
        "seed": opts.seed,
        "rank_upper_bound": rank_upper_bound(a),
        "face_invariants_preserved": faces_ok,
    });
    if job.truncation.is_some() {
        let t = job.truncation()?;
        let rw = match &job.rho_weight {
            Some(v) => parse_q_vec(v, "rho_weight")?,
            None => {
                let min = w.iter().min().cloned().ok_or_else(|| Error::Parse("weight: empty".into()))?;
                std::iter::once(min / Q::from_integer(10.into())).chain(w.iter().cloned()).collect()
            }
        };
        let sols = canonical_series_with(&SeriesSetup::new(&h.rho_a, &rw)?, &lift.lifted, &t)?;
        let restricted: Vec<SeriesJson> = sols.iter().map(|s| SeriesJson::from(&restrict_x0(s))).collect();
        doc["rho_weight"] = json!(q_vec_json(&rw));
        doc["restricted_series"] = json!(restricted);
    }
    Ok(doc)
}

/// Reads `p/q` from a CLI flag.
pub fn parse_truncation_flag(s: &str) -> Result<Q> {
    parse_q(s).map_err(|_| Error::Parse(format!("--truncation: not an exact rational: {s:?}")))
}
