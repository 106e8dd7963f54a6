//! Exact scalars: arbitrary precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"`, `"p"` or a plain decimal integer. Floats are rejected.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    Q::from_str(t).map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))
}

/// Canonical `"p/q"` (or `"p"` for integers) rendering.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn q_is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Lowest-terms rational equal to `x` if `x` is an integer, as `i64`.
pub fn q_to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Q,
    pub im: Q,
}

pub type GQ = GaussianRational;

impl GaussianRational {
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn real(re: Q) -> Self {
        Self { re, im: Q::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(q(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(qr(num, den))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True iff the value is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.im.is_zero() && self.re.is_integer()
    }

    /// The integer value, if this is a rational integer that fits in `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() {
            q_to_i64(&self.re)
        } else {
            None
        }
    }

    pub fn is_negative_integer(&self) -> bool {
        self.is_integer() && self.re.is_negative()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `max(|re|, |im|)`, an exact magnitude that vanishes iff the value does.
    pub fn max_abs_component(&self) -> Q {
        let a = self.re.abs();
        let b = self.im.abs();
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_q(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", fmt_q(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", fmt_q(&self.re), fmt_q(&-self.im.clone()))
        } else {
            write!(f, "{}+{}i", fmt_q(&self.re), fmt_q(&self.im))
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::real(Q::one())
    }
}

impl From<Q> for GaussianRational {
    fn from(x: Q) -> Self {
        Self::real(x)
    }
}

impl From<i64> for GaussianRational {
    fn from(x: i64) -> Self {
        Self::from_int(x)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: &'a GaussianRational) -> GaussianRational {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                self.$m(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl<'b> Sub<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'b GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl<'b> Mul<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'b GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

/// Panics on division by zero, like the rational division it wraps.
impl<'b> Div<&'b GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &'b GaussianRational) -> GaussianRational {
        if rhs.im.is_zero() {
            return GaussianRational::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl Mul<&Q> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &Q) -> GaussianRational {
        GaussianRational::new(&self.re * rhs, &self.im * rhs)
    }
}

/// Dot product of an integer vector with a Gaussian rational vector.
pub fn dot_int(a: &[i64], v: &[GQ]) -> GQ {
    let mut acc = GQ::zero();
    for (x, y) in a.iter().zip(v) {
        if *x != 0 {
            acc += &(y * &q(*x));
        }
    }
    acc
}

/// Dot product of a rational vector with an integer vector.
pub fn dot_q_int(w: &[Q], u: &[i64]) -> Q {
    let mut acc = Q::zero();
    for (x, y) in w.iter().zip(u) {
        if *y != 0 {
            acc += x * q(*y);
        }
    }
    acc
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn rising(x: &GQ, k: u64) -> GQ {
    let mut acc = GQ::one();
    for j in 0..k {
        acc = &acc * &(x + &GQ::from_int(j as i64));
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
pub fn falling(x: &GQ, k: u64) -> GQ {
    let mut acc = GQ::one();
    for j in 0..k {
        acc = &acc * &(x - &GQ::from_int(j as i64));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_operations_are_exact() {
        let a = GQ::new(qr(1, 2), qr(1, 3));
        let b = GQ::new(qr(-2, 5), q(1));
        let p = &a * &b;
        assert_eq!(&p / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert!(GQ::zero().inv().is_none());
    }

    #[test]
    fn parses_and_prints_rationals() {
        assert_eq!(parse_q("-3/6").unwrap(), qr(-1, 2));
        assert_eq!(fmt_q(&qr(4, 2)), "2");
        assert!(parse_q("0.5").is_err());
    }

    #[test]
    fn factorials() {
        let x = GQ::from_ratio(1, 2);
        assert_eq!(rising(&x, 2), GQ::from_ratio(3, 4));
        assert_eq!(falling(&x, 2), GQ::from_ratio(-1, 4));
        assert_eq!(falling(&x, 0), GQ::one());
    }

    #[test]
    fn integrality() {
        assert!(GQ::from_int(-3).is_negative_integer());
        assert!(!GQ::new(q(1), q(1)).is_integer());
        assert_eq!(GQ::from_ratio(6, 3).as_integer(), Some(2));
    }
}
