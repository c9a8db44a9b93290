//! Index and nullity of the conformal-bienergy Jacobi operator at the
//! totally geodesic equator and at small hyperspheres of `S^{m+1}`.
//!
//! Sections of the normal bundle of `S^m(r)` split into normal functions
//! `alpha eta`, gradient fields `grad alpha` and divergence-free fields.
//! On the equator the three streams decouple; on a small hypersphere each
//! eigenvalue `lambda_j` of the Laplacian couples `alpha eta` with
//! `grad alpha` in a 2x2 block. Every formula is a polynomial in the
//! Laplace eigenvalue, so the infinite spectrum is cut off with a Cauchy
//! root bound.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{int, rat, Rational};
use crate::error::{Error, Result};
use crate::models::{residual, HypersurfaceFamily};
use crate::poly::Poly;

/// Which family of sections an eigenvalue belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum StreamKind {
    NormalFunction(u32),
    GradientField(u32),
    /// Coupled normal/gradient block at level `j >= 1` (small hyperspheres).
    Coupled(u32),
    DivergenceFree(u32),
}

impl fmt::Display for StreamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamKind::NormalFunction(j) => write!(f, "normal j={j}"),
            StreamKind::GradientField(j) => write!(f, "gradient j={j}"),
            StreamKind::Coupled(j) => write!(f, "block j={j}"),
            StreamKind::DivergenceFree(k) => write!(f, "divergence-free k={k}"),
        }
    }
}

/// One eigenspace of the Laplacian feeding the Jacobi operator.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenStream {
    pub kind: StreamKind,
    /// `lambda_j = j(m+j-1)/r^2` or `mu_k = (k+1)(k+m-2)/r^2`.
    pub laplace_eigenvalue: Rational,
    pub multiplicity: u64,
}

fn binomial(n: i64, k: i64) -> u128 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the degree-`j` spherical harmonics on `S^m`.
pub fn function_multiplicity(m: u32, j: u32) -> u64 {
    if m == 1 {
        return if j == 0 { 1 } else { 2 };
    }
    let (m, j) = (m as i64, j as i64);
    (binomial(m + j, m) - binomial(m + j - 2, m)) as u64
}

/// Dimension of the divergence-free eigenfields of `Delta_H` on `S^m` with
/// eigenvalue `(k+1)(k+m-2)`: `k(k+m-1)(2k+m-1)(k+m-3)! / ((m-2)!(k+1)!)`.
/// On `S^1` the only divergence-free field is the Killing field.
pub fn divfree_multiplicity(m: u32, k: u32) -> u64 {
    if k == 0 {
        return 0;
    }
    if m == 1 {
        return u64::from(k == 1);
    }
    let (m, k) = (m as i128, k as i128);
    let c = binomial((k + m - 3) as i64, (m - 2) as i64) as i128;
    ((k + m - 1) * (2 * k + m - 1) * c / (k + 1)) as u64
}

/// `j(m+j-1)`, the `j`-th Laplace eigenvalue on the unit `S^m`.
pub fn function_eigenvalue(m: u32, j: u32) -> Rational {
    int(j as i64 * (m as i64 + j as i64 - 1))
}

/// `(k+1)(k+m-2)` on the unit `S^m`.
pub fn divfree_eigenvalue(m: u32, k: u32) -> Rational {
    int((k as i64 + 1) * (k as i64 + m as i64 - 2))
}

/// `gamma(lambda) = (lambda - m)(lambda + (2m^2 - 11m + 6)/3)` as a polynomial.
pub fn equator_normal_polynomial(m: u32) -> Poly {
    let m = m as i64;
    let a = Poly::new(vec![int(-m), int(1)]);
    let b = Poly::new(vec![rat(2 * m * m - 11 * m + 6, 3), int(1)]);
    a.mul(&b)
}

/// `(mu - 2m + 2)(mu + (2m^2 - 14m + 12)/3)` as a polynomial.
pub fn equator_tangent_polynomial(m: u32) -> Poly {
    let m = m as i64;
    let a = Poly::new(vec![int(2 - 2 * m), int(1)]);
    let b = Poly::new(vec![rat(2 * m * m - 14 * m + 12, 3), int(1)]);
    a.mul(&b)
}

pub fn equator_normal_eigenvalue(m: u32, lambda: &Rational) -> Rational {
    equator_normal_polynomial(m).eval(lambda)
}

pub fn equator_tangent_eigenvalue(m: u32, mu: &Rational) -> Rational {
    equator_tangent_polynomial(m).eval(mu)
}

/// Entries of the Jacobi operator on a small hypersphere as polynomials in
/// the Laplace eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct HypersphereOperator {
    pub m: u32,
    pub r2: Rational,
    /// Includes the `(2/3)(m-1)(m-3)/r^2` terms of the conformal bienergy;
    /// without them the operator is the bienergy Hessian.
    pub conformal: bool,
    pub a: Poly,
    pub b: Poly,
    pub d_sq: Poly,
    pub divfree: Poly,
}

impl HypersphereOperator {
    pub fn new(m: u32, r2: &Rational, conformal: bool) -> Result<Self> {
        if m < 1 {
            return Err(Error::Domain("m >= 1".into()));
        }
        if !(r2.is_positive() && *r2 <= int(1)) {
            return Err(Error::Domain(format!("0 < r^2 <= 1 (got {r2})")));
        }
        let mi = m as i64;
        let mq = int(mi);
        let one = int(1);
        let t = r2.clone();
        let s = &one - &t; // 1 - r^2
        let corr = if conformal {
            rat(2 * (mi - 1) * (mi - 3), 3) / &t
        } else {
            Rational::zero()
        };
        let x = Poly::x();
        let c = |q: Rational| Poly::constant(q);

        // normal: (m(1-r^2)/r^2 + l)^2 + 2(2l - 3m^2)(1-r^2)/r^2 - 2ml + m^2
        //         + K(m(1-r^2)/r^2 + l - m)
        let p = &mq * &s / &t;
        let shifted = c(p.clone()).add(&x);
        let a = shifted
            .mul(&shifted)
            .add(&x.scale(&int(2)).sub(&c(int(3 * mi * mi))).scale(&(int(2) * &s / &t)))
            .sub(&x.scale(&int(2 * mi)))
            .add(&c(int(mi * mi)))
            .add(&c(&p - &mq).add(&x).scale(&corr));

        // gradient: (X + l)^2 + (1-m)(1-m+2l) + ((1-r^2)(4l - m^2) - X r^2 (2m-2)) / r^2
        //           + K(X + l - m + 1), with X = (2 - r^2 - m)/r^2
        let xq = (int(2) - &t - &mq) / &t;
        let xl = c(xq.clone()).add(&x);
        let b = xl
            .mul(&xl)
            .add(&c(int(1 - mi)).add(&x.scale(&int(2))).scale(&int(1 - mi)))
            .add(
                &x.scale(&int(4))
                    .sub(&c(int(mi * mi)))
                    .scale(&(&s / &t))
                    .sub(&c(&xq * int(2 * mi - 2))),
            )
            .add(&xl.add(&c(int(1 - mi))).scale(&corr));

        // coupling: d^2 = 4(1-r^2)/r^2 (4m - 2/r^2 - 2l - K)^2 l
        let inner = c(int(4 * mi) - int(2) / &t - &corr).sub(&x.scale(&int(2)));
        let d_sq = inner.mul(&inner).mul(&x).scale(&(int(4) * &s / &t));

        // divergence-free: (X+mu)^2 + 2(1-m)(X+mu) - m^2(1-r^2)/r^2 + (1-m)^2
        //                  + K(X + mu + 1 - m)
        let divfree = xl
            .mul(&xl)
            .add(&xl.scale(&int(2 - 2 * mi)))
            .sub(&c(int(mi * mi) * &s / &t))
            .add(&c(int((1 - mi) * (1 - mi))))
            .add(&xl.add(&c(int(1 - mi))).scale(&corr));

        Ok(HypersphereOperator {
            m,
            r2: t,
            conformal,
            a,
            b,
            d_sq,
            divfree,
        })
    }

    pub fn trace(&self) -> Poly {
        self.a.add(&self.b)
    }

    pub fn det(&self) -> Poly {
        self.a.mul(&self.b).sub(&self.d_sq)
    }

    /// Laplace eigenvalue `lambda_j` on `S^m(r)`.
    pub fn lambda(&self, j: u32) -> Rational {
        function_eigenvalue(self.m, j) / &self.r2
    }

    /// `mu_k` on `S^m(r)`.
    pub fn mu(&self, k: u32) -> Rational {
        divfree_eigenvalue(self.m, k) / &self.r2
    }

    pub fn block(&self, j: u32) -> BlockSpectrum {
        let l = self.lambda(j);
        BlockSpectrum::new(j, self.a.eval(&l), self.b.eval(&l), self.d_sq.eval(&l))
    }
}

/// The 2x2 block of the Jacobi operator at level `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockSpectrum {
    pub j: u32,
    pub a: Rational,
    pub b: Rational,
    pub d_sq: Rational,
    pub trace: Rational,
    pub det: Rational,
    pub negative_count: u32,
    pub zero_count: u32,
}

impl BlockSpectrum {
    /// Classifies the two eigenvalues from the signs of trace and
    /// determinant.
    pub fn new(j: u32, a: Rational, b: Rational, d_sq: Rational) -> Self {
        let trace = &a + &b;
        let det = &a * &b - &d_sq;
        let (negative_count, zero_count) = if det.is_negative() {
            (1, 0)
        } else if det.is_positive() {
            if trace.is_negative() {
                (2, 0)
            } else {
                (0, 0)
            }
        } else if trace.is_positive() {
            (0, 1)
        } else if trace.is_negative() {
            (1, 1)
        } else {
            assert!(
                a.is_zero() && b.is_zero() && d_sq.is_zero(),
                "symmetric block with zero trace and determinant must vanish"
            );
            (0, 2)
        };
        BlockSpectrum {
            j,
            a,
            b,
            d_sq,
            trace,
            det,
            negative_count,
            zero_count,
        }
    }
}

/// The `S_0` (constant normal section) coefficient, `a` at `lambda = 0`.
pub fn hypersphere_s0_coefficient(m: u32, r2: &Rational) -> Result<Rational> {
    Ok(HypersphereOperator::new(m, r2, true)?.a.eval(&Rational::zero()))
}

/// Block at level `j >= 1`; `j = 0` gives the scalar `S_0` coefficient in
/// `a` with `b = d^2 = 0`.
pub fn hypersphere_block(m: u32, r2: &Rational, j: u32) -> Result<BlockSpectrum> {
    let op = HypersphereOperator::new(m, r2, true)?;
    if j == 0 {
        let a = op.a.eval(&Rational::zero());
        let (neg, zero) = sign_counts(&a);
        return Ok(BlockSpectrum {
            j,
            trace: a.clone(),
            det: Rational::zero(),
            a,
            b: Rational::zero(),
            d_sq: Rational::zero(),
            negative_count: neg,
            zero_count: zero,
        });
    }
    Ok(op.block(j))
}

/// The Jacobi operator on divergence-free fields with `Delta_H V = mu V`.
pub fn hypersphere_divfree_eigenvalue(m: u32, r2: &Rational, mu: &Rational) -> Result<Rational> {
    Ok(HypersphereOperator::new(m, r2, true)?.divfree.eval(mu))
}

fn sign_counts(v: &Rational) -> (u32, u32) {
    if v.is_negative() {
        (1, 0)
    } else if v.is_zero() {
        (0, 1)
    } else {
        (0, 0)
    }
}

/// Sign classification of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct BreakdownEntry {
    pub stream: EigenStream,
    /// Jacobi eigenvalue, for decoupled streams.
    pub value: Option<Rational>,
    /// Block data, for coupled levels.
    pub block: Option<BlockSpectrum>,
    /// Negative and zero eigenvalues per copy of the Laplace eigenspace.
    pub negative_count: u32,
    pub zero_count: u32,
}

impl BreakdownEntry {
    fn scalar(stream: EigenStream, value: Rational) -> Self {
        let (negative_count, zero_count) = sign_counts(&value);
        BreakdownEntry {
            stream,
            value: Some(value),
            block: None,
            negative_count,
            zero_count,
        }
    }

    pub fn index_contribution(&self) -> u64 {
        self.negative_count as u64 * self.stream.multiplicity
    }

    pub fn nullity_contribution(&self) -> u64 {
        self.zero_count as u64 * self.stream.multiplicity
    }
}

/// Polynomial whose positivity beyond a level is certified.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationBound {
    /// What the polynomial governs, e.g. `"normal"` or `"block det"`.
    pub label: String,
    pub polynomial: Poly,
    /// Cauchy bound: every real root is below it.
    pub root_bound: Rational,
}

/// Levels from which every eigenvalue is certified positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    /// First function level `J*` with `lambda_{J*}` above every bound.
    pub function_level: u32,
    /// First divergence-free level `K*`.
    pub divfree_level: u32,
    pub function_bounds: Vec<TruncationBound>,
    pub divfree_bounds: Vec<TruncationBound>,
}

impl Truncation {
    /// Re-checks the certificate: positive leading coefficients, levels
    /// past the root bounds, and positive values at the cut.
    pub fn verify(&self, lambda_cut: &Rational, mu_cut: &Rational) -> bool {
        let ok = |bounds: &[TruncationBound], cut: &Rational| {
            bounds.iter().all(|b| {
                b.polynomial.leading().is_some_and(|l| l.is_positive())
                    && b.polynomial.cauchy_bound() == b.root_bound
                    && *cut > b.root_bound
                    && b.polynomial.eval(cut).is_positive()
            })
        };
        ok(&self.function_bounds, lambda_cut) && ok(&self.divfree_bounds, mu_cut)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexNullityReport {
    pub m: u32,
    pub r2: Rational,
    pub index: u64,
    pub nullity: u64,
    pub breakdown: Vec<BreakdownEntry>,
    pub truncation: Truncation,
    /// The hypersphere is c-biharmonic, so the operator is a genuine Hessian.
    pub variational: bool,
}

fn bound(label: &str, p: Poly) -> TruncationBound {
    assert!(
        p.leading().is_some_and(|l| l.is_positive()),
        "stream polynomial must have positive leading coefficient"
    );
    TruncationBound {
        label: label.to_string(),
        root_bound: p.cauchy_bound(),
        polynomial: p,
    }
}

fn first_level_above(bounds: &[TruncationBound], eigen: impl Fn(u32) -> Rational, start: u32) -> u32 {
    let max = bounds
        .iter()
        .map(|b| b.root_bound.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let mut level = start;
    while eigen(level) <= max {
        level += 1;
    }
    level
}

fn totals(breakdown: &[BreakdownEntry]) -> (u64, u64) {
    breakdown.iter().fold((0, 0), |(i, n), e| {
        (i + e.index_contribution(), n + e.nullity_contribution())
    })
}

/// Index and nullity of the totally geodesic `S^m` in `S^{m+1}`.
pub fn index_nullity_equator(m: u32) -> Result<IndexNullityReport> {
    if m < 1 {
        return Err(Error::Domain("m >= 1".into()));
    }
    let normal = equator_normal_polynomial(m);
    let tangent = equator_tangent_polynomial(m);
    let function_bounds = vec![bound("normal", normal.clone()), bound("gradient", tangent.clone())];
    let divfree_bounds = vec![bound("divergence-free", tangent.clone())];
    let j_star = first_level_above(&function_bounds, |j| function_eigenvalue(m, j), 0);
    // S^1 carries a single divergence-free field
    let k_star = if m == 1 {
        2
    } else {
        first_level_above(&divfree_bounds, |k| divfree_eigenvalue(m, k), 1)
    };

    let mut breakdown = Vec::new();
    for j in 0..j_star {
        let l = function_eigenvalue(m, j);
        let stream = EigenStream {
            kind: StreamKind::NormalFunction(j),
            laplace_eigenvalue: l.clone(),
            multiplicity: function_multiplicity(m, j),
        };
        breakdown.push(BreakdownEntry::scalar(stream, normal.eval(&l)));
    }
    for j in 1..j_star {
        let l = function_eigenvalue(m, j);
        let stream = EigenStream {
            kind: StreamKind::GradientField(j),
            laplace_eigenvalue: l.clone(),
            multiplicity: function_multiplicity(m, j),
        };
        breakdown.push(BreakdownEntry::scalar(stream, tangent.eval(&l)));
    }
    for k in 1..k_star {
        let mu = divfree_eigenvalue(m, k);
        let stream = EigenStream {
            kind: StreamKind::DivergenceFree(k),
            laplace_eigenvalue: mu.clone(),
            multiplicity: divfree_multiplicity(m, k),
        };
        breakdown.push(BreakdownEntry::scalar(stream, tangent.eval(&mu)));
    }
    let (index, nullity) = totals(&breakdown);
    Ok(IndexNullityReport {
        m,
        r2: int(1),
        index,
        nullity,
        breakdown,
        truncation: Truncation {
            function_level: j_star,
            divfree_level: k_star,
            function_bounds,
            divfree_bounds,
        },
        variational: true,
    })
}

/// Index and nullity of `S^m(r)` in `S^{m+1}`. Parameters that are not
/// c-biharmonic still produce a report, with `variational` unset.
pub fn index_nullity_hypersphere(m: u32, r2: &Rational) -> Result<IndexNullityReport> {
    let op = HypersphereOperator::new(m, r2, true)?;
    let variational = residual(&HypersurfaceFamily::SphereInSphere { m, r2: r2.clone() })?.is_c_biharmonic;
    let function_bounds = vec![bound("block trace", op.trace()), bound("block det", op.det())];
    let divfree_bounds = vec![bound("divergence-free", op.divfree.clone())];
    let j_star = first_level_above(&function_bounds, |j| op.lambda(j), 1);
    let k_star = if m == 1 {
        2
    } else {
        first_level_above(&divfree_bounds, |k| op.mu(k), 1)
    };

    let mut breakdown = Vec::new();
    let s0 = EigenStream {
        kind: StreamKind::NormalFunction(0),
        laplace_eigenvalue: Rational::zero(),
        multiplicity: 1,
    };
    breakdown.push(BreakdownEntry::scalar(s0, op.a.eval(&Rational::zero())));
    for j in 1..j_star {
        let block = op.block(j);
        let stream = EigenStream {
            kind: StreamKind::Coupled(j),
            laplace_eigenvalue: op.lambda(j),
            multiplicity: function_multiplicity(m, j),
        };
        breakdown.push(BreakdownEntry {
            stream,
            value: None,
            negative_count: block.negative_count,
            zero_count: block.zero_count,
            block: Some(block),
        });
    }
    for k in 1..k_star {
        let mu = op.mu(k);
        let stream = EigenStream {
            kind: StreamKind::DivergenceFree(k),
            laplace_eigenvalue: mu.clone(),
            multiplicity: divfree_multiplicity(m, k),
        };
        breakdown.push(BreakdownEntry::scalar(stream, op.divfree.eval(&mu)));
    }
    let (index, nullity) = totals(&breakdown);
    Ok(IndexNullityReport {
        m,
        r2: r2.clone(),
        index,
        nullity,
        breakdown,
        truncation: Truncation {
            function_level: j_star,
            divfree_level: k_star,
            function_bounds,
            divfree_bounds,
        },
        variational,
    })
}

impl IndexNullityReport {
    /// Laplace eigenvalues at the truncation levels.
    pub fn cut_eigenvalues(&self) -> (Rational, Rational) {
        let l = function_eigenvalue(self.m, self.truncation.function_level) / &self.r2;
        let mu = divfree_eigenvalue(self.m, self.truncation.divfree_level) / &self.r2;
        (l, mu)
    }

    pub fn truncation_verified(&self) -> bool {
        let (l, mu) = self.cut_eigenvalues();
        self.truncation.verify(&l, &mu)
    }
}
