//! Integer polynomials and certified real-root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{format_rational, simplest_rational_between, to_f64, Rational};
use crate::error::{Error, Result};
use crate::poly::{write_terms, Poly, SturmSequence};

/// Integer-coefficient polynomial, ascending degree, obtained from a
/// rational condition by multiplying through by `clearing_factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    pub coeffs: Vec<BigInt>,
    pub clearing_factor: BigInt,
    /// Name of the indeterminate, used for display only.
    pub variable: String,
}

impl ExactPolynomial {
    pub fn new(coeffs: Vec<BigInt>, clearing_factor: BigInt, variable: &str) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if !clearing_factor.is_positive() {
            return Err(Error::Domain("clearing factor must be positive".into()));
        }
        Ok(ExactPolynomial {
            coeffs,
            clearing_factor,
            variable: variable.to_string(),
        })
    }

    pub fn from_i64(coeffs: &[i64], variable: &str) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), BigInt::one(), variable)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    /// Greatest common divisor of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_bigints(&self.coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.to_poly().eval(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_poly().eval_f64(x)
    }

    /// `x -> 1 - x` substitution.
    pub fn reflect(&self) -> ExactPolynomial {
        let p = self.to_poly();
        let reflected = p.taylor_shift(&Rational::one());
        // q(x) = p(1 - x) = p(1 + (-x))
        let coeffs: Vec<BigInt> = reflected
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let c = c.to_integer();
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        ExactPolynomial::new(coeffs, self.clearing_factor.clone(), &self.variable)
            .expect("reflection preserves degree")
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().map(|c| c.to_string()), &self.variable)
    }
}

/// Interval `[lo, hi]` containing exactly one root of a polynomial.
///
/// When `exact_root` is set, `lo == hi` is the (rational) root itself;
/// otherwise the polynomial takes opposite nonzero signs at `lo` and `hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub exact_root: bool,
}

impl RootInterval {
    pub fn exact(root: Rational) -> Self {
        RootInterval {
            lo: root.clone(),
            hi: root,
            exact_root: true,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// Largest distance from the midpoint to the root.
    pub fn error_bound(&self) -> f64 {
        to_f64(&self.width()) / 2.0
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_root {
            write!(f, "{}", format_rational(&self.lo))
        } else {
            write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
        }
    }
}

/// Default refinement width `2^-40`.
pub fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 40)
}

/// Sturm data for repeated counting and refinement on one polynomial.
#[derive(Debug, Clone)]
pub struct RootIsolator {
    sturm: SturmSequence,
    /// Rational roots have denominators dividing this leading coefficient.
    separation: Rational,
}

impl RootIsolator {
    pub fn new(p: &ExactPolynomial) -> Result<Self> {
        let sturm = SturmSequence::new(&p.to_poly())?;
        let ints = sturm.base().primitive_integer();
        let lc = Rational::from_integer(ints.last().unwrap().abs());
        Ok(RootIsolator {
            sturm,
            separation: (&lc * &lc).recip(),
        })
    }

    fn sign(&self, x: &Rational) -> i32 {
        self.sturm.base().sign_at(x)
    }

    /// Distinct roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> Result<usize> {
        check_interval(lo, hi)?;
        Ok(self.sturm.count_open(lo, hi))
    }

    /// Isolates every root in `(lo, hi)`, each refined below `width`.
    pub fn isolate(&self, lo: &Rational, hi: &Rational, width: &Rational) -> Result<Vec<RootInterval>> {
        check_interval(lo, hi)?;
        let two = Rational::from_integer(2.into());
        let mut pending = vec![(lo.clone(), hi.clone())];
        let mut found = Vec::new();
        while let Some((a, b)) = pending.pop() {
            let n = self.sturm.count_half_open(&a, &b);
            match n {
                0 => {}
                1 => found.push(self.refine_half_open(a, b, width)),
                _ => {
                    let mid = (&a + &b) / &two;
                    pending.push((mid.clone(), b));
                    pending.push((a, mid));
                }
            }
        }
        // roots at `hi` belong to the closed end and are excluded
        found.retain(|r| !(r.exact_root && r.lo == *hi));
        found.sort_by(|x, y| x.lo.cmp(&y.lo));
        Ok(found)
    }

    /// Shrinks an interval from a previous isolation below `width`.
    pub fn refine(&self, root: &RootInterval, width: &Rational) -> RootInterval {
        if root.exact_root {
            return root.clone();
        }
        self.refine_half_open(root.lo.clone(), root.hi.clone(), width)
    }

    /// Refines the single root in `(a, b]`.
    fn refine_half_open(&self, mut a: Rational, mut b: Rational, width: &Rational) -> RootInterval {
        let two = Rational::from_integer(2.into());
        if self.sign(&b) == 0 {
            return RootInterval::exact(b);
        }
        let mut checked_rational = false;
        loop {
            let w = &b - &a;
            if !checked_rational && w < self.separation {
                checked_rational = true;
                let s = simplest_rational_between(&a, &b);
                if s > a && self.sign(&s) == 0 {
                    return RootInterval::exact(s);
                }
            }
            let a_sign = self.sign(&a);
            if w <= *width && a_sign != 0 {
                return RootInterval {
                    lo: a,
                    hi: b,
                    exact_root: false,
                };
            }
            let mid = (&a + &b) / &two;
            let s_mid = self.sign(&mid);
            if s_mid == 0 {
                return RootInterval::exact(mid);
            }
            let left = if a_sign != 0 {
                s_mid != a_sign
            } else {
                self.sturm.count_half_open(&a, &mid) == 1
            };
            if left {
                b = mid;
            } else {
                a = mid;
            }
        }
    }
}

fn check_interval(lo: &Rational, hi: &Rational) -> Result<()> {
    if lo >= hi {
        return Err(Error::InvalidInterval {
            lo: format_rational(lo),
            hi: format_rational(hi),
        });
    }
    Ok(())
}

/// All real roots of `p` in the open interval `(lo, hi)`, refined to the
/// default width.
pub fn isolate_roots(p: &ExactPolynomial, lo: &Rational, hi: &Rational) -> Result<Vec<RootInterval>> {
    RootIsolator::new(p)?.isolate(lo, hi, &default_width())
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn count_roots(p: &ExactPolynomial, lo: &Rational, hi: &Rational) -> Result<usize> {
    RootIsolator::new(p)?.count(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn isolates_simple_roots() {
        let p = ExactPolynomial::from_i64(&[-6, 11, -6, 1], "x").unwrap();
        let roots = isolate_roots(&p, &int(0), &int(10)).unwrap();
        let values: Vec<_> = roots.iter().map(|r| r.lo.clone()).collect();
        assert!(roots.iter().all(|r| r.exact_root));
        assert_eq!(values, vec![int(1), int(2), int(3)]);
        // open interval excludes endpoint roots
        assert_eq!(isolate_roots(&p, &int(1), &int(3)).unwrap().len(), 1);
    }

    #[test]
    fn irrational_roots_are_bracketed() {
        let p = ExactPolynomial::from_i64(&[-2, 0, 1], "x").unwrap();
        let roots = isolate_roots(&p, &int(-5), &int(5)).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(!r.exact_root);
            assert!(r.width() <= default_width());
            let (a, b) = (p.eval(&r.lo), p.eval(&r.hi));
            assert!(a.signum() * b.signum() < num_traits::Zero::zero());
        }
        assert!((roots[1].to_f64() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn no_real_roots() {
        let p = ExactPolynomial::from_i64(&[1, 0, 1], "x").unwrap();
        assert!(isolate_roots(&p, &int(-10), &int(10)).unwrap().is_empty());
    }

    #[test]
    fn repeated_rational_root() {
        // 3(2x - 1)^3
        let p = ExactPolynomial::from_i64(&[-3, 18, -36, 24], "x").unwrap();
        let roots = isolate_roots(&p, &int(0), &int(1)).unwrap();
        assert_eq!(roots, vec![RootInterval::exact(rat(1, 2))]);
    }

    #[test]
    fn errors() {
        assert_eq!(
            ExactPolynomial::from_i64(&[0, 0], "x").unwrap_err(),
            Error::ZeroPolynomial
        );
        let p = ExactPolynomial::from_i64(&[1, 1], "x").unwrap();
        assert!(matches!(
            isolate_roots(&p, &int(1), &int(0)),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn reflection() {
        let p = ExactPolynomial::from_i64(&[-3, 20, -63, 54], "T").unwrap();
        let q = p.reflect();
        let x = rat(2, 7);
        assert_eq!(q.eval(&x), p.eval(&(int(1) - &x)));
        assert_eq!(p.to_string(), "54T^3 - 63T^2 + 20T - 3");
    }
}
