//! JSON documents. Exact numbers travel as `"p/q"` strings; Gaussian
//! rationals as `{"re": "p/q", "im": "p/q"}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{fmt_q, parse_q, GQ, Q};
use crate::series::MixedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GqJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".into()
}

impl GqJson {
    pub fn parse(&self, field: &str) -> Result<GQ> {
        let re = parse_q(&self.re).map_err(|_| Error::Parse(format!("{field}: bad real part {:?}", self.re)))?;
        let im = parse_q(&self.im).map_err(|_| Error::Parse(format!("{field}: bad imaginary part {:?}", self.im)))?;
        Ok(GQ::new(re, im))
    }
}

impl From<&GQ> for GqJson {
    fn from(x: &GQ) -> Self {
        Self { re: fmt_q(&x.re), im: fmt_q(&x.im) }
    }
}

/// A complex floating-point point for numeric evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub offset: Vec<i64>,
    pub log: Vec<u32>,
    pub coefficient: GqJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub base: Vec<GqJson>,
    pub weight: Vec<String>,
    pub truncation: String,
    pub terms: Vec<TermJson>,
}

impl From<&MixedSeries> for SeriesJson {
    fn from(s: &MixedSeries) -> Self {
        Self {
            base: s.base.iter().map(GqJson::from).collect(),
            weight: s.weight.iter().map(fmt_q).collect(),
            truncation: fmt_q(&s.truncation),
            terms: s
                .terms
                .iter()
                .map(|((u, d), c)| TermJson { offset: u.clone(), log: d.clone(), coefficient: c.into() })
                .collect(),
        }
    }
}

impl SeriesJson {
    pub fn parse(&self, field: &str) -> Result<MixedSeries> {
        let base = parse_gq_vec(&self.base, &format!("{field}.base"))?;
        let weight = parse_q_vec(&self.weight, &format!("{field}.weight"))?;
        let t = parse_q(&self.truncation).map_err(|_| Error::Parse(format!("{field}.truncation")))?;
        let n = base.len();
        if weight.len() != n {
            return Err(Error::Parse(format!("{field}.weight: expected {n} entries")));
        }
        let mut s = MixedSeries::new(base, weight, t);
        for (i, term) in self.terms.iter().enumerate() {
            if term.offset.len() != n || term.log.len() != n {
                return Err(Error::Parse(format!("{field}.terms[{i}]: expected vectors of length {n}")));
            }
            let c = term.coefficient.parse(&format!("{field}.terms[{i}].coefficient"))?;
            s.add_term(term.offset.clone(), term.log.clone(), &c);
        }
        Ok(s)
    }
}

pub fn parse_q_vec(v: &[String], field: &str) -> Result<Vec<Q>> {
    v.iter()
        .enumerate()
        .map(|(i, x)| parse_q(x).map_err(|_| Error::Parse(format!("{field}[{i}]: not an exact rational: {x:?}"))))
        .collect()
}

pub fn parse_gq_vec(v: &[GqJson], field: &str) -> Result<Vec<GQ>> {
    v.iter().enumerate().map(|(i, x)| x.parse(&format!("{field}[{i}]"))).collect()
}

pub fn gq_vec_json(v: &[GQ]) -> Vec<GqJson> {
    v.iter().map(GqJson::from).collect()
}

pub fn q_vec_json(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

/// Input document shared by all commands; each command reads the fields it
/// needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Vec<GqJson>>,
    /// Several parameters (`strata` only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<Vec<Vec<GqJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<String>,
    /// `"canonical"` (default) or `"log_free"` for `series`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Exponent for `horn`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<GqJson>>,
    /// Lattice basis columns for `horn`; defaults to the kernel basis of `A`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<i64>>>,
    /// Series for `verify` and `evaluate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<SeriesJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<ComplexJson>>,
    /// `"plain"` (default) or `"gamma_normalized"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// Weight on `rho(A)` for `homogenize`; defaults to `(min(w)/10, w)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_weight: Option<Vec<String>>,
    /// Force the inhomogeneous triangulation in `triangulate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inhomogeneous: Option<bool>,
}

impl JobSpec {
    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn weight(&self) -> Result<Vec<Q>> {
        let w = self.weight.as_ref().ok_or_else(|| Error::Parse("missing field `weight`".into()))?;
        parse_q_vec(w, "weight")
    }

    pub fn parameter(&self) -> Result<Vec<GQ>> {
        let b = self.parameter.as_ref().ok_or_else(|| Error::Parse("missing field `parameter`".into()))?;
        parse_gq_vec(b, "parameter")
    }

    pub fn truncation(&self) -> Result<Q> {
        let t = self.truncation.as_ref().ok_or_else(|| Error::Parse("missing field `truncation`".into()))?;
        parse_q(t).map_err(|_| Error::Parse(format!("truncation: not an exact rational: {t:?}")))
    }

    pub fn series(&self) -> Result<Vec<MixedSeries>> {
        let s = self.series.as_ref().ok_or_else(|| Error::Parse("missing field `series`".into()))?;
        s.iter().enumerate().map(|(i, x)| x.parse(&format!("series[{i}]"))).collect()
    }
}
