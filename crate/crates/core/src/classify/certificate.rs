//! Positivity certificates for polynomials in a squared radius whose
//! coefficients are integer polynomials in the dimension `m`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::Rational;
use crate::poly::{write_terms, Poly};

/// Certificate that `P(x; m) = sum_i c_i(m) x^i` is positive for all
/// `x > 0` and all real `m >= floor`.
///
/// Each `c_i(floor + s)` has only nonnegative coefficients in `s`, and at
/// least one of them has a positive constant term. When that holds for
/// `c_0`, positivity extends to `x = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub variable: String,
    pub floor: i64,
    /// `coefficients[i]` lists `c_i(m)` in ascending powers of `m`.
    pub coefficients: Vec<Vec<BigInt>>,
    /// `shifted[i]` lists `c_i(floor + s)` in ascending powers of `s`.
    pub shifted: Vec<Vec<BigInt>>,
}

fn shift(c: &[BigInt], floor: i64) -> Vec<BigInt> {
    let p = Poly::from_bigints(c);
    let mut out: Vec<BigInt> = p
        .taylor_shift(&Rational::from_integer(floor.into()))
        .coeffs()
        .iter()
        .map(|q| q.to_integer())
        .collect();
    out.resize(c.len().max(1), BigInt::zero());
    out
}

impl PositivityCertificate {
    /// Builds the certificate, or `None` when the shifted coefficients are
    /// not all nonnegative.
    pub fn build(variable: &str, floor: i64, coefficients: Vec<Vec<i64>>) -> Option<Self> {
        let coefficients: Vec<Vec<BigInt>> = coefficients
            .into_iter()
            .map(|c| c.into_iter().map(BigInt::from).collect())
            .collect();
        let shifted = coefficients.iter().map(|c| shift(c, floor)).collect();
        let cert = PositivityCertificate {
            variable: variable.to_string(),
            floor,
            coefficients,
            shifted,
        };
        cert.verify().then_some(cert)
    }

    /// Recomputes the shifts and checks the sign conditions.
    pub fn verify(&self) -> bool {
        let mut strict = false;
        for (c, s) in self.coefficients.iter().zip(&self.shifted) {
            let recomputed = shift(c, self.floor);
            if recomputed != *s || s.iter().any(|v| v.is_negative()) {
                return false;
            }
            strict |= s.first().is_some_and(|v| v.is_positive());
        }
        strict && self.coefficients.len() == self.shifted.len()
    }

    /// Positivity also holds at `x = 0`.
    pub fn includes_zero(&self) -> bool {
        self.shifted
            .first()
            .and_then(|s| s.first())
            .is_some_and(|v| v.is_positive())
    }

    /// Evaluates `P(x; m)` exactly.
    pub fn eval(&self, x: &Rational, m: i64) -> Rational {
        let mq = Rational::from_integer(m.into());
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Poly::from_bigints(c).eval(&mq))
    }
}

impl fmt::Display for PositivityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, c: &[BigInt], var: &str| {
            write_terms(f, c.iter().map(|v| v.to_string()), var)
        };
        if self.variable.contains('^') {
            write!(f, "sum over i of c_i(m) ({})^i with ", self.variable)?;
        } else {
            write!(f, "sum over i of c_i(m) {}^i with ", self.variable)?;
        }
        for (i, (c, s)) in self.coefficients.iter().zip(&self.shifted).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "c_{i}(m) = ")?;
            show(f, c, "m")?;
            write!(f, ", c_{i}({} + s) = ", self.floor)?;
            show(f, s, "s")?;
        }
        Ok(())
    }
}
