//! Explicit hypersurface families in space forms, their invariants, and the
//! normal coefficients of the tension, bitension and conformal bitension.
//!
//! Every family is parametrized by a squared radius `T` (or `a` for the
//! horosphere). Odd-order quantities are of the form `q * sqrt(D)` with a
//! family-specific radicand `D(T)`; they are carried as [`Surd`] values so
//! that zero tests reduce to the rational cofactor `q`.

pub mod energy;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{ArithmeticMode, Rational, Scalar, Surd};
use crate::error::{Error, Result};

/// A hypersurface of a space form with its parameters.
///
/// Squared radii are stored instead of radii; all invariants are rational
/// in them.
#[derive(Debug, Clone, PartialEq)]
pub enum HypersurfaceFamily {
    /// `S^m(r)` in `S^{m+1}`, `0 < r^2 <= 1`.
    SphereInSphere { m: u32, r2: Rational },
    /// `S^{m1}(r1) x S^{m2}(r2)` in `S^{m+1}`, `r1^2 + r2^2 = 1`.
    CliffordTorus { m1: u32, m2: u32, r1_sq: Rational },
    /// Equidistant hypersurface of `H^{m+1}` at distance `asinh r`.
    HypEquidistant { m: u32, r2: Rational },
    Horosphere { m: u32, a: Rational },
    HypGeodesicSphere { m: u32, r2: Rational },
    /// `S^k(r) x H^{m-k}(sqrt(1 + r^2))` in `H^{m+1}`.
    HypProduct { m: u32, k: u32, r2: Rational },
    EuclideanHyperplane { m: u32 },
    EuclideanSphere { m: u32, r2: Rational },
    /// `S^k(r) x R^{m-k}` in `R^{m+1}`.
    EuclideanCylinder { m: u32, k: u32, r2: Rational },
}

impl HypersurfaceFamily {
    pub fn dimension(&self) -> u32 {
        use HypersurfaceFamily::*;
        match self {
            SphereInSphere { m, .. }
            | HypEquidistant { m, .. }
            | Horosphere { m, .. }
            | HypGeodesicSphere { m, .. }
            | HypProduct { m, .. }
            | EuclideanHyperplane { m }
            | EuclideanSphere { m, .. }
            | EuclideanCylinder { m, .. } => *m,
            CliffordTorus { m1, m2, .. } => m1 + m2,
        }
    }

    pub fn ambient_curvature(&self) -> i32 {
        use HypersurfaceFamily::*;
        match self {
            SphereInSphere { .. } | CliffordTorus { .. } => 1,
            HypEquidistant { .. } | Horosphere { .. } | HypGeodesicSphere { .. } | HypProduct { .. } => -1,
            EuclideanHyperplane { .. } | EuclideanSphere { .. } | EuclideanCylinder { .. } => 0,
        }
    }

    /// Short kebab-case tag, also used by the command line.
    pub fn name(&self) -> &'static str {
        use HypersurfaceFamily::*;
        match self {
            SphereInSphere { .. } => "hypersphere",
            CliffordTorus { .. } => "clifford",
            HypEquidistant { .. } => "equidistant",
            Horosphere { .. } => "horosphere",
            HypGeodesicSphere { .. } => "geodesic-sphere",
            HypProduct { .. } => "product",
            EuclideanHyperplane { .. } => "hyperplane",
            EuclideanSphere { .. } => "euclidean-sphere",
            EuclideanCylinder { .. } => "cylinder",
        }
    }

    /// The squared-radius parameter, when the family has one.
    pub fn parameter(&self) -> Option<&Rational> {
        use HypersurfaceFamily::*;
        match self {
            SphereInSphere { r2, .. }
            | HypEquidistant { r2, .. }
            | HypGeodesicSphere { r2, .. }
            | HypProduct { r2, .. }
            | EuclideanSphere { r2, .. }
            | EuclideanCylinder { r2, .. } => Some(r2),
            CliffordTorus { r1_sq, .. } => Some(r1_sq),
            Horosphere { a, .. } => Some(a),
            EuclideanHyperplane { .. } => None,
        }
    }

    /// Same family with the parameter replaced.
    pub fn with_parameter(&self, value: Rational) -> Self {
        use HypersurfaceFamily::*;
        let mut out = self.clone();
        match &mut out {
            SphereInSphere { r2, .. }
            | HypEquidistant { r2, .. }
            | HypGeodesicSphere { r2, .. }
            | HypProduct { r2, .. }
            | EuclideanSphere { r2, .. }
            | EuclideanCylinder { r2, .. } => *r2 = value,
            CliffordTorus { r1_sq, .. } => *r1_sq = value,
            Horosphere { a, .. } => *a = value,
            EuclideanHyperplane { .. } => {}
        }
        out
    }

    /// Checks the parameter domain, naming the violated constraint.
    pub fn validate(&self) -> Result<()> {
        use HypersurfaceFamily::*;
        let zero = Rational::zero();
        let one = Rational::from_integer(1.into());
        let fail = |what: String| Err(Error::Domain(what));
        let m = self.dimension();
        match self {
            SphereInSphere { r2, .. } => {
                if m < 1 {
                    return fail("m >= 1".into());
                }
                if !(*r2 > zero && *r2 <= one) {
                    return fail(format!("0 < r^2 <= 1 (got {r2})"));
                }
            }
            CliffordTorus { m1, m2, r1_sq } => {
                if *m1 < 1 || *m2 < 1 {
                    return fail("m1 >= 1 and m2 >= 1".into());
                }
                if !(*r1_sq > zero && *r1_sq < one) {
                    return fail(format!("0 < r1^2 < 1 (got {r1_sq})"));
                }
            }
            HypEquidistant { r2, .. } => {
                if m < 2 {
                    return fail("m >= 2".into());
                }
                if r2.is_negative() {
                    return fail(format!("r^2 >= 0 (got {r2})"));
                }
            }
            Horosphere { a, .. } => {
                if m < 2 {
                    return fail("m >= 2".into());
                }
                if !a.is_positive() {
                    return fail(format!("a > 0 (got {a})"));
                }
            }
            HypGeodesicSphere { r2, .. } => {
                if m < 2 {
                    return fail("m >= 2".into());
                }
                if !r2.is_positive() {
                    return fail(format!("r^2 > 0 (got {r2})"));
                }
            }
            HypProduct { k, r2, .. } => {
                if m < 2 {
                    return fail("m >= 2".into());
                }
                if *k >= m {
                    return fail(format!("0 <= k <= m - 1 (got k = {k}, m = {m})"));
                }
                if !r2.is_positive() {
                    return fail(format!("r^2 > 0 (got {r2})"));
                }
            }
            EuclideanHyperplane { .. } => {
                if m < 1 {
                    return fail("m >= 1".into());
                }
            }
            EuclideanSphere { r2, .. } => {
                if m < 1 {
                    return fail("m >= 1".into());
                }
                if !r2.is_positive() {
                    return fail(format!("r^2 > 0 (got {r2})"));
                }
            }
            EuclideanCylinder { k, r2, .. } => {
                if *k < 1 || *k >= m {
                    return fail(format!("1 <= k <= m - 1 (got k = {k}, m = {m})"));
                }
                if !r2.is_positive() {
                    return fail(format!("r^2 > 0 (got {r2})"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for HypersurfaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use HypersurfaceFamily::*;
        match self {
            SphereInSphere { m, r2 } => write!(f, "hypersphere(m={m}, r^2={r2})"),
            CliffordTorus { m1, m2, r1_sq } => write!(f, "clifford(m1={m1}, m2={m2}, r1^2={r1_sq})"),
            HypEquidistant { m, r2 } => write!(f, "equidistant(m={m}, r^2={r2})"),
            Horosphere { m, a } => write!(f, "horosphere(m={m}, a={a})"),
            HypGeodesicSphere { m, r2 } => write!(f, "geodesic-sphere(m={m}, r^2={r2})"),
            HypProduct { m, k, r2 } => write!(f, "product(m={m}, k={k}, r^2={r2})"),
            EuclideanHyperplane { m } => write!(f, "hyperplane(m={m})"),
            EuclideanSphere { m, r2 } => write!(f, "euclidean-sphere(m={m}, r^2={r2})"),
            EuclideanCylinder { m, k, r2 } => write!(f, "cylinder(m={m}, k={k}, r^2={r2})"),
        }
    }
}

/// Invariants of a CMC hypersurface entering the conformal bitension.
///
/// Principal curvatures, the mean curvature and `<A, Ric>` are multiples of
/// `sqrt(radicand)`; the remaining fields are rational in the parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricData<S> {
    pub ambient_curvature: i32,
    pub dimension: u32,
    pub radicand: S,
    /// `(kappa, multiplicity)`, with principal curvature `kappa * sqrt(radicand)`.
    pub principal_curvatures: Vec<(S, u32)>,
    pub mean_curvature: Surd<S>,
    pub shape_norm_sq: S,
    pub scal: S,
    /// Ricci eigenvalues, listed in the same order as `principal_curvatures`.
    pub ric_eigenvalues: Vec<(S, u32)>,
    pub a_dot_ric: Surd<S>,
}

fn n<S: Scalar>(v: i64) -> S {
    S::from_i64(v)
}

/// Radicand, principal curvatures and Ricci eigenvalues in terms of `t`.
type RawInvariants<S> = (S, Vec<(S, u32)>, Vec<(S, u32)>);

fn raw_invariants<S: Scalar>(family: &HypersurfaceFamily, t: S) -> RawInvariants<S> {
    use HypersurfaceFamily::*;
    let one = S::one_value();
    match family {
        SphereInSphere { m, .. } => {
            let m = *m as i64;
            (
                (one - t.clone()) / t.clone(),
                vec![(n(-1), m as u32)],
                vec![(n::<S>(m - 1) / t, m as u32)],
            )
        }
        CliffordTorus { m1, m2, .. } => {
            let (a, b) = (*m1 as i64, *m2 as i64);
            let s = one.clone() - t.clone();
            (
                one / (t.clone() * s.clone()),
                vec![(-s.clone(), *m1), (t.clone(), *m2)],
                vec![(n::<S>(a - 1) / t, *m1), (n::<S>(b - 1) / s, *m2)],
            )
        }
        HypEquidistant { m, .. } => {
            let mm = *m as i64;
            let p = one + t.clone();
            (t / p.clone(), vec![(n(-1), *m)], vec![(n::<S>(1 - mm) / p, *m)])
        }
        Horosphere { m, .. } => (one, vec![(n(-1), *m)], vec![(n(0), *m)]),
        HypGeodesicSphere { m, .. } => {
            let mm = *m as i64;
            (
                (one + t.clone()) / t.clone(),
                vec![(n(-1), *m)],
                vec![(n::<S>(mm - 1) / t, *m)],
            )
        }
        HypProduct { m, k, .. } => {
            let (mm, kk) = (*m as i64, *k as i64);
            let p = one.clone() + t.clone();
            let mut curv = Vec::new();
            let mut ric = Vec::new();
            if *k > 0 {
                curv.push((-p.clone(), *k));
                ric.push((n::<S>(kk - 1) / t.clone(), *k));
            }
            curv.push((-t.clone(), m - k));
            ric.push((n::<S>(kk + 1 - mm) / p.clone(), m - k));
            (one / (t * p), curv, ric)
        }
        EuclideanHyperplane { m } => (one, vec![(n(0), *m)], vec![(n(0), *m)]),
        EuclideanSphere { m, .. } => {
            let mm = *m as i64;
            (one / t.clone(), vec![(n(-1), *m)], vec![(n::<S>(mm - 1) / t, *m)])
        }
        EuclideanCylinder { m, k, .. } => {
            let kk = *k as i64;
            (
                one / t.clone(),
                vec![(n(-1), *k), (n(0), m - k)],
                vec![(n::<S>(kk - 1) / t, *k), (n(0), m - k)],
            )
        }
    }
}

fn parameter_as<S: Scalar>(family: &HypersurfaceFamily) -> S {
    family
        .parameter()
        .map(S::from_rational)
        .unwrap_or_else(S::one_value)
}

fn assemble<S: Scalar>(family: &HypersurfaceFamily, t: S) -> GeometricData<S> {
    let (d, curv, ric) = raw_invariants(family, t);
    let m = family.dimension();
    let trace = curv
        .iter()
        .fold(S::zero_value(), |acc, (k, mult)| acc + k.clone() * n(*mult as i64));
    let norm_coeff = curv
        .iter()
        .fold(S::zero_value(), |acc, (k, mult)| acc + k.sq() * n(*mult as i64));
    let scal = ric
        .iter()
        .fold(S::zero_value(), |acc, (r, mult)| acc + r.clone() * n(*mult as i64));
    let a_ric = curv
        .iter()
        .zip(&ric)
        .fold(S::zero_value(), |acc, ((k, mult), (r, _))| {
            acc + k.clone() * r.clone() * n(*mult as i64)
        });
    GeometricData {
        ambient_curvature: family.ambient_curvature(),
        dimension: m,
        radicand: d.clone(),
        principal_curvatures: curv,
        mean_curvature: Surd::new(trace / n(m as i64), d.clone()),
        shape_norm_sq: norm_coeff * d.clone(),
        scal,
        ric_eigenvalues: ric,
        a_dot_ric: Surd::new(a_ric, d),
    }
}

/// Closed-form invariants of `family`, exact.
pub fn geometric_data(family: &HypersurfaceFamily) -> Result<GeometricData<Rational>> {
    family.validate()?;
    Ok(assemble(family, parameter_as(family)))
}

/// Closed-form invariants of `family` in floating point.
pub fn geometric_data_f64(family: &HypersurfaceFamily) -> Result<GeometricData<f64>> {
    family.validate()?;
    Ok(assemble(family, parameter_as(family)))
}

/// `m f (-|A|^2 + m c - (2/3) Scal) + 2 <A, Ric>` for a CMC hypersurface with
/// constant scalar curvature; it vanishes exactly when the hypersurface is
/// c-biharmonic.
///
/// For every family this equals the normal coefficient of the conformal
/// bitension returned by [`residual`]; dividing by `m` gives the normal part
/// of `tau_2^c / m` (see [`normalized_cmc_residual`]).
pub fn cmc_residual<S: Scalar>(data: &GeometricData<S>, m: u32) -> Surd<S> {
    let mm: S = n(m as i64);
    let c: S = n(data.ambient_curvature as i64);
    let bracket = -data.shape_norm_sq.clone() + mm.clone() * c
        - S::ratio(2, 3) * data.scal.clone();
    let coeff = mm * data.mean_curvature.coeff.clone() * bracket
        + n::<S>(2) * data.a_dot_ric.coeff.clone();
    Surd::new(coeff, data.radicand.clone())
}

/// Normal part of `tau_2^c / m`.
pub fn normalized_cmc_residual<S: Scalar>(data: &GeometricData<S>, m: u32) -> Surd<S> {
    let r = cmc_residual(data, m);
    Surd::new(r.coeff / n(m as i64), r.radicand)
}

/// Normal coefficients of `tau`, `tau_2` and `tau_2^c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<S> {
    pub tension: Surd<S>,
    pub bitension: Surd<S>,
    pub c_bitension: Surd<S>,
    pub mode: ArithmeticMode,
    pub is_c_biharmonic: bool,
}

/// The three coefficients from the family-specific closed forms.
fn closed_forms<S: Scalar>(family: &HypersurfaceFamily, t: S) -> (S, S, S) {
    use HypersurfaceFamily::*;
    let one = S::one_value();
    let third = S::ratio(1, 3);
    match family {
        SphereInSphere { m, .. } => {
            let m = *m as i64;
            let mm: S = n(m);
            let tau = -mm.clone();
            let tau2 = mm.sq() * (one - n::<S>(2) * t.clone()) / t.clone();
            let tau2c = mm.clone()
                * (-n::<S>(6 * m) * t.clone() + n(2 * m * m - 5 * m + 6))
                * third
                / t;
            (tau, tau2, tau2c)
        }
        CliffordTorus { m1, m2, .. } => {
            let (a, b) = (*m1 as i64, *m2 as i64);
            let (ma, mb): (S, S) = (n(a), n(b));
            let s = one.clone() - t.clone();
            let lead = ma.clone() * s.clone() - mb.clone() * t.clone();
            let tau = -lead.clone();
            let tau2 = lead.clone()
                * ((s.clone() / t.clone() - one.clone()) * ma.clone()
                    + (t.clone() / s.clone() - one.clone()) * mb.clone());
            let tau2c = lead
                * ((one - n::<S>(2) * t.clone()) * (ma / t.clone() - mb / s.clone())
                    + S::ratio(2, 3)
                        * (n::<S>((a - 1) * (a - 3)) / t + n::<S>((b - 1) * (b - 3)) / s))
                - n::<S>(2 * (a - b));
            (tau, tau2, tau2c)
        }
        HypEquidistant { m, .. } => {
            let m = *m as i64;
            let mm: S = n(m);
            let p = one.clone() + t.clone();
            let tau = -mm.clone();
            let tau2 = mm.sq() * (one + n::<S>(2) * t.clone()) / p.clone();
            let tau2c = mm * (n::<S>(6 * m) * t + n(-2 * m * m + 11 * m - 6)) * third / p;
            (tau, tau2, tau2c)
        }
        Horosphere { m, .. } => {
            let m = *m as i64;
            (n(-m), n(2 * m * m), n(2 * m * m))
        }
        HypGeodesicSphere { m, .. } => {
            let m = *m as i64;
            let mm: S = n(m);
            let tau = -mm.clone();
            let tau2 = mm.sq() * (one + n::<S>(2) * t.clone()) / t.clone();
            let tau2c = mm * (n::<S>(6 * m) * t.clone() + n(2 * m * m - 5 * m + 6)) * third / t;
            (tau, tau2, tau2c)
        }
        HypProduct { m, k, .. } => {
            let (m, k) = (*m as i64, *k as i64);
            let p = one.clone() + t.clone();
            let lead = n::<S>(k) + n::<S>(m) * t.clone();
            let tau = -lead.clone();
            let tau2 = lead
                * (n::<S>(k) * p.clone() / t.clone()
                    + n::<S>(m - k) * t.clone() / p.clone()
                    + n::<S>(m));
            let tau2c = product_polynomial::<S>(m, k, t.clone()) * third / (t * p);
            (tau, tau2, tau2c)
        }
        EuclideanHyperplane { .. } | EuclideanSphere { .. } | EuclideanCylinder { .. } => {
            let data = assemble(family, t);
            let m = data.dimension as i64;
            let tau = n::<S>(m) * data.mean_curvature.coeff.clone();
            let tau2 = tau.clone()
                * (n::<S>(m * data.ambient_curvature as i64) - data.shape_norm_sq.clone());
            let tau2c = cmc_residual(&data, data.dimension).coeff;
            (tau, tau2, tau2c)
        }
    }
}

/// Cubic numerator of the product-family conformal bitension, in `t = r^2`.
pub(crate) fn product_polynomial<S: Scalar>(m: i64, k: i64, t: S) -> S {
    let c = product_coefficients(m, k);
    c.iter().rev().fold(S::zero_value(), |acc, &ci| acc * t.clone() + n(ci))
}

/// Ascending coefficients of the product-family cubic.
pub(crate) fn product_coefficients(m: i64, k: i64) -> [i64; 4] {
    [
        2 * k * k * k - 5 * k * k + 6 * k,
        2 * k * (k * (3 * m - 5) - m * m + 3 * m + 6),
        -2 * m * m * m + 11 * m * m - 6 * m + 4 * k * (m * m - m + 3),
        6 * m * m,
    ]
}

fn report<S: Scalar>(family: &HypersurfaceFamily, mode: ArithmeticMode) -> ResidualReport<S> {
    let t: S = parameter_as(family);
    let d = raw_invariants(family, t.clone()).0;
    let (tau, tau2, tau2c) = closed_forms(family, t);
    let c_bitension = Surd::new(tau2c, d.clone());
    let is_c_biharmonic = match mode {
        ArithmeticMode::Exact => c_bitension.is_zero(),
        ArithmeticMode::Float { tolerance } => c_bitension.to_f64().abs() <= tolerance,
    };
    ResidualReport {
        tension: Surd::new(tau, d.clone()),
        bitension: Surd::new(tau2, d),
        c_bitension,
        mode,
        is_c_biharmonic,
    }
}

/// Normal coefficients from the family closed forms, in exact arithmetic.
pub fn residual(family: &HypersurfaceFamily) -> Result<ResidualReport<Rational>> {
    family.validate()?;
    Ok(report(family, ArithmeticMode::Exact))
}

/// Floating-point variant; `is_c_biharmonic` compares against `tolerance`.
pub fn residual_f64(family: &HypersurfaceFamily, tolerance: f64) -> Result<ResidualReport<f64>> {
    family.validate()?;
    Ok(report(family, ArithmeticMode::Float { tolerance }))
}

/// Necessary condition for a non-minimal c-biharmonic hypersphere of radius
/// `r` in a space form of curvature `c`: `c > (2/3)(m-1)(m-3)/(m r^2)`.
pub fn radius_validity(m: u32, c: &Rational, r2: &Rational) -> bool {
    let m = m as i64;
    let bound = Rational::new(((m - 1) * (m - 3) * 2).into(), (3 * m).into()) / r2;
    *c > bound
}
