//! Dense univariate polynomials over the rationals and Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Polynomial with rational coefficients in ascending degree order.
/// The coefficient vector never has trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::arith::to_f64(c))
    }

    /// Sign of `p(x)`: -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`: same roots, all simple.
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) < 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Coefficients of `p(x + a)`.
    pub fn taylor_shift(&self, a: &Rational) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// Cauchy bound: every real root satisfies `|x| < 1 + max |a_i / a_n|`.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::zero();
        };
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }

    /// Scales to integer coefficients with gcd 1 and positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(crate::arith::format_rational), "x")
    }
}

/// Writes `c_n x^n + ... + c_0`, highest degree first, skipping zeros.
pub(crate) fn write_terms<I>(f: &mut fmt::Formatter<'_>, coeffs: I, var: &str) -> fmt::Result
where
    I: DoubleEndedIterator<Item = String> + ExactSizeIterator,
{
    let n = coeffs.len();
    let mut first = true;
    for (k, c) in coeffs.rev().enumerate() {
        let deg = n - 1 - k;
        if c == "0" {
            continue;
        }
        let (neg, body) = match c.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, c),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let body = if body.contains('/') && deg > 0 {
            format!("({body})")
        } else {
            body
        };
        match deg {
            0 => write!(f, "{body}")?,
            _ => {
                if body != "1" {
                    write!(f, "{body}")?;
                }
                if deg > 1 && var.contains('^') {
                    write!(f, "({var})^{deg}")?;
                } else if deg > 1 {
                    write!(f, "{var}^{deg}")?;
                } else {
                    write!(f, "{var}")?;
                }
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Sturm sequence of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Poly>,
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.square_free();
        let mut chain = vec![p0.clone()];
        let mut prev = p0.clone();
        let mut cur = p0.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = prev.div_rem(&cur);
            prev = cur;
            cur = r.neg();
        }
        Ok(SturmSequence { chain })
    }

    /// The square-free polynomial heading the chain.
    pub fn base(&self) -> &Poly {
        &self.chain[0]
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_half_open(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_open(&self, lo: &Rational, hi: &Rational) -> usize {
        let n = self.count_half_open(lo, hi);
        if self.base().sign_at(hi) == 0 {
            n - 1
        } else {
            n
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn arithmetic_and_division() {
        let p = Poly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let q = Poly::from_ints(&[1, 1]); // x + 1
        let (d, r) = p.div_rem(&q);
        assert_eq!(d, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.eval(&int(3)), int(8));
        assert_eq!(q.mul(&d), p);
    }

    #[test]
    fn square_free_removes_repeated_factors() {
        // 3(2x - 1)^3 has square-free part proportional to 2x - 1
        let p = Poly::from_ints(&[-3, 18, -36, 24]);
        let sf = p.square_free();
        assert_eq!(sf.degree(), Some(1));
        assert_eq!(sf.eval(&rat(1, 2)), int(0));
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Poly::from_ints(&[6, -11, 2]);
        let shifted = p.taylor_shift(&int(5));
        assert_eq!(shifted, Poly::from_ints(&[1, 9, 2]));
    }

    #[test]
    fn sturm_counts() {
        let p = Poly::from_ints(&[-2, 0, 1]);
        let s = SturmSequence::new(&p).unwrap();
        assert_eq!(s.count_half_open(&int(-10), &int(10)), 2);
        assert_eq!(s.count_half_open(&int(0), &int(10)), 1);
        let none = SturmSequence::new(&Poly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(none.count_half_open(&int(-10), &int(10)), 0);
        // roots on the boundary
        let lin = SturmSequence::new(&Poly::from_ints(&[-1, 2])).unwrap();
        assert_eq!(lin.count_half_open(&int(0), &rat(1, 2)), 1);
        assert_eq!(lin.count_open(&int(0), &rat(1, 2)), 0);
        assert_eq!(lin.count_half_open(&rat(1, 2), &int(1)), 0);
        assert!(SturmSequence::new(&Poly::zero()).is_err());
    }

    #[test]
    fn primitive_form() {
        let p = Poly::new(vec![rat(-1, 1), rat(20, 3), int(-21), int(18)]);
        let ints = p.primitive_integer();
        let expect: Vec<BigInt> = [-3, 20, -63, 54].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(ints, expect);
        assert_eq!(p.to_string(), "18x^3 - 21x^2 + (20/3)x - 1");
    }

    #[test]
    fn cauchy_bound_encloses_roots() {
        let p = Poly::from_ints(&[-6, 11, -6, 1]); // roots 1, 2, 3
        assert!(p.cauchy_bound() > int(3));
    }
}
