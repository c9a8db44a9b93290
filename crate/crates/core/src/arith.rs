//! Scalar abstraction shared by the exact (rational) and floating evaluation
//! paths, plus quadratic surds `q * sqrt(d)` used for odd-order invariants.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Field operations needed by the closed-form formulas.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn as_f64(&self) -> f64;
    fn is_zero_value(&self) -> bool;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn zero_value() -> Self {
        Self::from_i64(0)
    }

    fn one_value() -> Self {
        Self::from_i64(1)
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        int(v)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn as_f64(&self) -> f64 {
        to_f64(self)
    }

    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(q: &Rational) -> Self {
        to_f64(q)
    }

    fn as_f64(&self) -> f64 {
        *self
    }

    fn is_zero_value(&self) -> bool {
        *self == 0.0
    }
}

/// The real number `coeff * sqrt(radicand)` with `radicand >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd<S> {
    pub coeff: S,
    pub radicand: S,
}

impl<S: Scalar> Surd<S> {
    pub fn new(coeff: S, radicand: S) -> Self {
        Surd { coeff, radicand }
    }

    pub fn rational(coeff: S) -> Self {
        Surd {
            coeff,
            radicand: S::one_value(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero_value() || self.radicand.is_zero_value()
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.as_f64() * self.radicand.as_f64().sqrt()
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.coeff > S::zero_value() {
            1
        } else {
            -1
        }
    }

    /// Compares two surds by value, possibly with different radicands.
    pub fn value_eq(&self, other: &Surd<S>) -> bool {
        if self.signum() != other.signum() {
            return false;
        }
        self.coeff.sq() * self.radicand.clone() == other.coeff.sq() * other.radicand.clone()
    }

    pub fn scale(&self, factor: S) -> Self {
        Surd {
            coeff: self.coeff.clone() * factor,
            radicand: self.radicand.clone(),
        }
    }
}

impl Surd<Rational> {
    pub fn to_float(&self) -> Surd<f64> {
        Surd {
            coeff: to_f64(&self.coeff),
            radicand: to_f64(&self.radicand),
        }
    }
}

/// How residual zero-tests are decided.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ArithmeticMode {
    Exact,
    Float { tolerance: f64 },
}

/// Parses `p/q`, an integer, or a decimal literal (optionally with exponent)
/// into an exact rational. The flag is true when the input was a decimal.
pub fn parse_rational(text: &str) -> Result<(Rational, bool)> {
    let s = text.trim();
    let bad = || Error::Parse(format!("'{text}' as a rational number"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok((Rational::new(n, d), false));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Ok((Rational::from_integer(n), false));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    if neg {
        value = -value;
    }
    Ok((value, true))
}

/// `p/q` (or `p` for integers).
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal rendering with 15 significant digits.
pub fn format_decimal(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if (-4..15).contains(&magnitude) {
        let decimals = (14 - magnitude).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.14e}")
    }
}

/// Smallest-denominator rational in the closed interval `[lo, hi]`.
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // lo and hi share the integer part; recurse on reciprocals of the fractional parts.
    let lo_frac = lo.clone() - fl.clone();
    let hi_frac = hi.clone() - fl.clone();
    let inner = simplest_rational_between(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}
