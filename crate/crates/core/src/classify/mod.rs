//! Exact c-biharmonicity conditions for each family and complete
//! classifications over parameter ranges.

mod certificate;
mod roots;

pub use certificate::PositivityCertificate;
pub use roots::{
    count_roots, default_width, isolate_roots, ExactPolynomial, RootInterval, RootIsolator,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{int, rat, Rational};
use crate::error::{Error, Result};
use crate::models::{product_coefficients, residual, HypersurfaceFamily};

/// Back-substitution target for isolated (irrational) roots.
const RESIDUAL_TARGET: f64 = 1e-12;

fn poly(coeffs: &[i64], variable: &str) -> ExactPolynomial {
    ExactPolynomial::from_i64(coeffs, variable).expect("condition polynomials are nonzero")
}

/// `6m r^2 - (2m^2 - 5m + 6)`; its root is the small c-biharmonic
/// hypersphere of `S^{m+1}` when it lies in `(0, 1)`.
pub fn hypersphere_condition(m: u32) -> ExactPolynomial {
    let m = m as i64;
    poly(&[-(2 * m * m - 5 * m + 6), 6 * m], "r^2")
}

/// Coefficients `a_0..a_3` of the Clifford cubic in `T = r1^2`.
pub fn clifford_coefficients(m1: u32, m2: u32) -> [i64; 4] {
    let (a, b) = (m1 as i64, m2 as i64);
    [
        -2 * a * a * a + 5 * a * a - 6 * a,
        2 * a * (6 + 2 * a * a + a * (b - 2) - b * (b - 3)),
        -a * (a + 2) * (2 * a + 3) + 6 * b - 2 * a * b * (a + 9) + (2 * a - 11) * b * b + 2 * b * b * b,
        6 * (a + b) * (a + b),
    ]
}

/// The Clifford cubic `zeta(T)`; the conformal bitension of the torus is
/// `-zeta(T) / (3T(1 - T))` times `1/(r1 r2)`.
pub fn clifford_condition(m1: u32, m2: u32) -> ExactPolynomial {
    poly(&clifford_coefficients(m1, m2), "T")
}

/// `6m r^2 - 2m^2 + 11m - 6` for equidistant hypersurfaces of `H^{m+1}`.
pub fn equidistant_condition(m: u32) -> ExactPolynomial {
    let m = m as i64;
    poly(&[-2 * m * m + 11 * m - 6, 6 * m], "r^2")
}

/// `6m r^2 + 2m^2 - 5m + 6` for geodesic spheres of `H^{m+1}`.
pub fn geodesic_sphere_condition(m: u32) -> ExactPolynomial {
    let m = m as i64;
    poly(&[2 * m * m - 5 * m + 6, 6 * m], "r^2")
}

/// The constant `2m^2` for horospheres.
pub fn horosphere_condition(m: u32) -> ExactPolynomial {
    let m = m as i64;
    poly(&[2 * m * m], "a")
}

/// Cubic in `r^2` for `S^k(r) x H^{m-k}` in `H^{m+1}`.
pub fn product_condition(m: u32, k: u32) -> ExactPolynomial {
    poly(&product_coefficients(m as i64, k as i64), "r^2")
}

/// Which family a classification covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTemplate {
    Hypersphere,
    Clifford,
    CliffordEqualRadius,
    HypEquidistant,
    Horosphere,
    HypGeodesicSphere,
    HypProduct,
}

impl fmt::Display for FamilyTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTemplate::Hypersphere => "hypersphere",
            FamilyTemplate::Clifford => "clifford",
            FamilyTemplate::CliffordEqualRadius => "clifford-equal-radius",
            FamilyTemplate::HypEquidistant => "equidistant",
            FamilyTemplate::Horosphere => "horosphere",
            FamilyTemplate::HypGeodesicSphere => "geodesic-sphere",
            FamilyTemplate::HypProduct => "product",
        };
        f.write_str(s)
    }
}

/// A c-biharmonic member of a family.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Family with its parameter set to the root (the midpoint of the
    /// isolating interval for irrational roots).
    pub family: HypersurfaceFamily,
    /// Location of the parameter: exact, or certified interval.
    pub root: RootInterval,
    pub totally_geodesic: bool,
    /// `|c-bitension|` after substituting `family` back into the residual.
    pub residual_magnitude: f64,
}

/// One polynomial scanned over one open interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub label: String,
    pub polynomial: ExactPolynomial,
    pub lo: Rational,
    pub hi: Rational,
    /// Sturm count of distinct roots in `(lo, hi)`.
    pub root_count: usize,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    pub template: FamilyTemplate,
    /// Description of the parameter ranges scanned.
    pub ranges: String,
    /// Solutions in canonical order (scan order, ascending parameter).
    pub solutions: Vec<Solution>,
    /// Completeness data: every polynomial, interval and root count.
    pub entries: Vec<ScanEntry>,
    /// Symbolic certificates covering parameters beyond the scan.
    pub certificates: Vec<PositivityCertificate>,
    /// Statements that were not machine-verified.
    pub unverified: Vec<String>,
}

impl ClassificationResult {
    fn new(template: FamilyTemplate, ranges: String) -> Self {
        ClassificationResult {
            template,
            ranges,
            solutions: Vec::new(),
            entries: Vec::new(),
            certificates: Vec::new(),
            unverified: Vec::new(),
        }
    }

    /// Solutions that are not totally geodesic.
    pub fn proper_solutions(&self) -> impl Iterator<Item = &Solution> {
        self.solutions.iter().filter(|s| !s.totally_geodesic)
    }
}

/// Builds a solution with back-substitution, refining irrational roots
/// until the residual is below [`RESIDUAL_TARGET`].
fn solution(
    family: &HypersurfaceFamily,
    root: RootInterval,
    isolator: Option<&RootIsolator>,
    totally_geodesic: bool,
) -> Result<Solution> {
    let mut root = root;
    loop {
        let fam = family.with_parameter(root.midpoint());
        let report = residual(&fam)?;
        let magnitude = report.c_bitension.to_f64().abs();
        if root.exact_root {
            if !report.is_c_biharmonic {
                return Err(Error::Domain(format!(
                    "exact root {} of {} does not annihilate the residual",
                    root, fam
                )));
            }
            return Ok(Solution {
                family: fam,
                root,
                totally_geodesic,
                residual_magnitude: 0.0,
            });
        }
        let tight = root.width() < Rational::new(BigInt::one(), BigInt::one() << 120);
        if magnitude < RESIDUAL_TARGET || tight || isolator.is_none() {
            return Ok(Solution {
                family: fam,
                root,
                totally_geodesic,
                residual_magnitude: magnitude,
            });
        }
        let target = root.width() / Rational::from_integer(BigInt::from(1u32 << 16));
        root = isolator.unwrap().refine(&root, &target);
    }
}

fn scan(
    label: String,
    p: &ExactPolynomial,
    lo: &Rational,
    hi: &Rational,
) -> Result<(ScanEntry, Vec<RootInterval>, RootIsolator)> {
    let iso = RootIsolator::new(p)?;
    let roots = iso.isolate(lo, hi, &default_width())?;
    let entry = ScanEntry {
        label,
        polynomial: p.clone(),
        lo: lo.clone(),
        hi: hi.clone(),
        root_count: roots.len(),
        note: None,
    };
    Ok((entry, roots, iso))
}

/// Hyperspheres `S^m(r)` of `S^{m+1}` for `m = 1..=m_max`.
pub fn classify_hyperspheres(m_max: u32) -> Result<ClassificationResult> {
    if m_max < 1 {
        return Err(Error::Domain("m_max >= 1".into()));
    }
    let mut out = ClassificationResult::new(FamilyTemplate::Hypersphere, format!("m = 1..{m_max}, r^2 in (0, 1]"));
    for m in 1..=m_max {
        let fam = HypersurfaceFamily::SphereInSphere { m, r2: int(1) };
        let p = hypersphere_condition(m);
        let (mut entry, roots, iso) = scan(format!("m={m}"), &p, &int(0), &int(1))?;
        if roots.is_empty() {
            let root = rat(2 * (m as i64) * (m as i64) - 5 * m as i64 + 6, 6 * m as i64);
            entry.note = Some(format!("root r^2 = {root} lies outside (0, 1)"));
        }
        out.entries.push(entry);
        for r in roots {
            out.solutions.push(solution(&fam, r, Some(&iso), false)?);
        }
        out.solutions
            .push(solution(&fam, RootInterval::exact(int(1)), None, true)?);
    }
    // (2m^2 - 5m + 6) - 6m > 0 for m >= 5: the root exceeds 1
    out.certificates
        .push(PositivityCertificate::build("r^2", 5, vec![vec![6, -11, 2]]).expect("valid certificate"));
    Ok(out)
}

/// Roots of the Clifford cubic for one pair, with back-substitution.
pub fn classify_clifford_pair(m1: u32, m2: u32) -> Result<ClassificationResult> {
    if m1 < 1 || m2 < 1 {
        return Err(Error::Domain("m1 >= 1 and m2 >= 1".into()));
    }
    let mut out = ClassificationResult::new(
        FamilyTemplate::Clifford,
        format!("m1 = {m1}, m2 = {m2}, r1^2 in (0, 1)"),
    );
    clifford_pair_into(&mut out, m1, m2)?;
    Ok(out)
}

fn clifford_pair_into(out: &mut ClassificationResult, m1: u32, m2: u32) -> Result<()> {
    let p = clifford_condition(m1, m2);
    let (entry, roots, iso) = scan(format!("m1={m1},m2={m2}"), &p, &int(0), &int(1))?;
    out.entries.push(entry);
    let fam = HypersurfaceFamily::CliffordTorus { m1, m2, r1_sq: rat(1, 2) };
    for r in roots {
        out.solutions.push(solution(&fam, r, Some(&iso), false)?);
    }
    Ok(())
}

/// Full Clifford classification up to a total dimension bound.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordClassification {
    /// Root lists for `m1 <= m2`, `m1 + m2 <= m_max`; the pair `(m2, m1)`
    /// has the reflected roots `1 - T`.
    pub pairs: ClassificationResult,
    /// Pairs `m1 < m2`, `m1 + m2 <= cap`, that are c-biharmonic at `T = 1/2`.
    pub equal_radius: ClassificationResult,
    /// `(m1, m2, has_root)` for every scanned pair.
    pub existence: Vec<(u32, u32, bool)>,
}

pub fn classify_clifford(m_max: u32, equal_radius_cap: u32) -> Result<CliffordClassification> {
    if m_max < 2 {
        return Err(Error::Domain("m_max >= 2".into()));
    }
    let mut pairs = ClassificationResult::new(
        FamilyTemplate::Clifford,
        format!("1 <= m1 <= m2, m1 + m2 <= {m_max}, r1^2 in (0, 1)"),
    );
    let mut existence = Vec::new();
    for m in 2..=m_max {
        for m1 in 1..=m / 2 {
            let m2 = m - m1;
            let before = pairs.solutions.len();
            clifford_pair_into(&mut pairs, m1, m2)?;
            existence.push((m1, m2, pairs.solutions.len() > before));
        }
    }
    let equal_radius = classify_clifford_equal_radius(equal_radius_cap)?;
    Ok(CliffordClassification {
        pairs,
        equal_radius,
        existence,
    })
}

/// Tori with `r1 = r2 = 1/sqrt(2)` and `m1 != m2`, exact test at `T = 1/2`.
pub fn classify_clifford_equal_radius(cap: u32) -> Result<ClassificationResult> {
    let mut out = ClassificationResult::new(
        FamilyTemplate::CliffordEqualRadius,
        format!("1 <= m1 < m2, m1 + m2 <= {cap}, r1^2 = 1/2"),
    );
    let half = rat(1, 2);
    for m in 3..=cap {
        for m1 in 1..=(m - 1) / 2 {
            let m2 = m - m1;
            if m1 == m2 {
                continue;
            }
            let p = clifford_condition(m1, m2);
            if p.eval(&half).is_zero() {
                let fam = HypersurfaceFamily::CliffordTorus { m1, m2, r1_sq: half.clone() };
                out.solutions
                    .push(solution(&fam, RootInterval::exact(half.clone()), None, false)?);
            }
        }
    }
    out.unverified
        .push(format!("pairs with m1 + m2 > {cap} were not scanned"));
    Ok(out)
}

/// The four hyperbolic families.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicClassification {
    pub equidistant: ClassificationResult,
    pub horosphere: ClassificationResult,
    pub geodesic_sphere: ClassificationResult,
    pub product: ClassificationResult,
}

fn check_range(m_lo: u32, m_hi: u32) -> Result<()> {
    if m_lo < 2 || m_hi < m_lo {
        return Err(Error::Domain(format!("2 <= m_lo <= m_hi (got {m_lo}..{m_hi})")));
    }
    Ok(())
}

fn positive_half_line(p: &ExactPolynomial) -> Rational {
    p.to_poly().cauchy_bound()
}

pub fn classify_equidistant(m_lo: u32, m_hi: u32) -> Result<ClassificationResult> {
    check_range(m_lo, m_hi)?;
    let mut out = ClassificationResult::new(
        FamilyTemplate::HypEquidistant,
        format!("m = {m_lo}..{m_hi}, r^2 >= 0"),
    );
    for m in m_lo..=m_hi {
        let fam = HypersurfaceFamily::HypEquidistant { m, r2: int(0) };
        out.solutions
            .push(solution(&fam, RootInterval::exact(int(0)), None, true)?);
        let p = equidistant_condition(m);
        let hi = positive_half_line(&p);
        let (entry, roots, iso) = scan(format!("m={m}"), &p, &int(0), &hi)?;
        out.entries.push(entry);
        for r in roots {
            out.solutions.push(solution(&fam, r, Some(&iso), false)?);
        }
    }
    // 2m^2 - 11m + 6 > 0 for m >= 5: the root is positive
    out.certificates
        .push(PositivityCertificate::build("r^2", 5, vec![vec![6, -11, 2]]).expect("valid certificate"));
    Ok(out)
}

pub fn classify_horosphere(m_lo: u32, m_hi: u32) -> Result<ClassificationResult> {
    check_range(m_lo, m_hi)?;
    let mut out = ClassificationResult::new(FamilyTemplate::Horosphere, format!("m = {m_lo}..{m_hi}, a > 0"));
    for m in m_lo..=m_hi {
        let p = horosphere_condition(m);
        out.entries.push(ScanEntry {
            label: format!("m={m}"),
            polynomial: p,
            lo: int(0),
            hi: int(1),
            root_count: 0,
            note: Some("constant residual, independent of a".into()),
        });
    }
    out.certificates
        .push(PositivityCertificate::build("a", 2, vec![vec![0, 0, 2]]).expect("valid certificate"));
    Ok(out)
}

pub fn classify_geodesic_sphere(m_lo: u32, m_hi: u32) -> Result<ClassificationResult> {
    check_range(m_lo, m_hi)?;
    let mut out = ClassificationResult::new(
        FamilyTemplate::HypGeodesicSphere,
        format!("m = {m_lo}..{m_hi}, r^2 > 0"),
    );
    for m in m_lo..=m_hi {
        let p = geodesic_sphere_condition(m);
        let hi = positive_half_line(&p);
        let (entry, roots, _) = scan(format!("m={m}"), &p, &int(0), &hi)?;
        debug_assert!(roots.is_empty());
        out.entries.push(entry);
    }
    out.certificates.push(
        PositivityCertificate::build("r^2", 2, vec![vec![6, -5, 2], vec![0, 6]]).expect("valid certificate"),
    );
    Ok(out)
}

/// Product hypersurfaces with `1 <= k <= m - 1`; `k = 0` is the
/// equidistant family and is classified there.
pub fn classify_product(m_lo: u32, m_hi: u32) -> Result<ClassificationResult> {
    check_range(m_lo, m_hi)?;
    let mut out = ClassificationResult::new(
        FamilyTemplate::HypProduct,
        format!("m = {m_lo}..{m_hi}, k = 1..m-1, r^2 > 0"),
    );
    for m in m_lo..=m_hi {
        for k in 1..m {
            let p = product_condition(m, k);
            let hi = positive_half_line(&p);
            let (entry, roots, iso) = scan(format!("m={m},k={k}"), &p, &int(0), &hi)?;
            out.entries.push(entry);
            let fam = HypersurfaceFamily::HypProduct { m, k, r2: int(1) };
            for r in roots {
                out.solutions.push(solution(&fam, r, Some(&iso), false)?);
            }
        }
    }
    out.unverified
        .push(format!("dimensions above m = {m_hi} were not scanned"));
    Ok(out)
}

pub fn classify_hyperbolic(m_max: u32) -> Result<HyperbolicClassification> {
    check_range(2, m_max)?;
    Ok(HyperbolicClassification {
        equidistant: classify_equidistant(2, m_max)?,
        horosphere: classify_horosphere(2, m_max)?,
        geodesic_sphere: classify_geodesic_sphere(2, m_max)?,
        product: classify_product(2, m_max)?,
    })
}
