use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::number::{GQ, Q};
use crate::series::MixedSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalMode {
    Plain,
    /// Divides by `Π Γ(alpha_i + 1)` of the base exponent.
    GammaNormalized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    /// Sum of absolute values of the terms of maximal offset weight.
    pub last_shell: f64,
    pub tolerance: f64,
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `log Γ(z)` for complex `z` (Lanczos, with reflection for `Re z < 1/2`).
/// The branch is not continuous; only `exp` of the result is meaningful.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    if z.re < 0.5 {
        let s = (Complex64::new(pi, 0.0) * z).sin();
        return Complex64::new(pi.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * pi).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn reciprocal_gamma_factor(alpha: &[GQ]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for a in alpha {
        let z = a + &GQ::from_int(1);
        if z.is_integer() && z.re <= Q::from_integer(0.into()) {
            return Complex64::new(0.0, 0.0);
        }
        acc -= ln_gamma(z.to_complex());
    }
    acc.exp()
}

/// Numeric value of the truncated series at `x`, with principal logarithms.
/// The tail estimate is the size of the shell of maximal offset weight.
pub fn evaluate(s: &MixedSeries, x: &[Complex64], mode: EvalMode, tolerance: f64) -> Result<Evaluation> {
    if x.len() != s.n() {
        return Err(Error::Dimension(format!("point has length {}, expected {}", x.len(), s.n())));
    }
    let logs: Vec<Complex64> = x.iter().map(|v| v.ln()).collect();
    let weights = s.terms.keys().map(|(u, _)| s.offset_weight(u));
    let top = weights.clone().max();
    // a series living in a single shell is a finite sum; it has no tail
    let top = top.filter(|t| Some(t) != weights.min().as_ref());
    let mut value = Complex64::new(0.0, 0.0);
    let mut shell = 0.0;
    for ((u, d), c) in &s.terms {
        let mut expo = Complex64::new(0.0, 0.0);
        for (j, a) in s.exponent(u).iter().enumerate() {
            expo += a.to_complex() * logs[j];
        }
        let mut term = c.to_complex() * expo.exp();
        for (j, &k) in d.iter().enumerate() {
            term *= logs[j].powi(k as i32);
        }
        value += term;
        if Some(s.offset_weight(u)) == top {
            shell += term.norm();
        }
    }
    if mode == EvalMode::GammaNormalized {
        let f = reciprocal_gamma_factor(&s.base);
        value *= f;
        shell *= f.norm();
    }
    if shell > tolerance {
        return Err(Error::ConvergenceWarning { re: value.re, im: value.im, last_shell: shell, tolerance });
    }
    Ok(Evaluation { value, last_shell: shell, tolerance })
}
