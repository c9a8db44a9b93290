//! Conformal bienergy of rotationally symmetric maps
//! `(theta, r) -> (theta, zeta(r))` between warped products
//! `dr^2 + alpha(r)^2 g_{S^q}` and `dz^2 + beta(z)^2 g_{S^q}`, its
//! behaviour under conformal changes `e^{2 rho(r)} g` of the domain, and the
//! ODEs for conformal maps and constant-scalar-curvature targets.

pub mod ode;
pub mod profile;
pub mod quadrature;
pub mod warped;

pub use ode::{integrate, OdeOptions, Trajectory};
pub use profile::{Jet, Profile};
pub use quadrature::{gauss_legendre, QuadratureSpec};
pub use warped::{warped_ric, warped_scal, WarpedProfile};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::models::energy::sphere_volume;
use warped::{ric_from_jet, scal_from_jet, POLE_THRESHOLD};

/// The radial function `zeta` of a rotationally symmetric map.
#[derive(Debug, Clone, PartialEq)]
pub enum ZetaProfile {
    Closed(Profile),
    Solved(ConformalSolution),
}

impl ZetaProfile {
    pub fn jet(&self, r: f64) -> Jet {
        match self {
            ZetaProfile::Closed(p) => p.jet(r),
            ZetaProfile::Solved(s) => s.jet(r),
        }
    }
}

/// `(theta, r) -> (theta, zeta(r))` into the warped product with profile `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotSymMap {
    pub zeta: ZetaProfile,
    pub beta: Profile,
    /// Declared to satisfy `zeta' alpha = beta(zeta)`.
    pub conformal: bool,
}

impl RotSymMap {
    pub fn new(zeta: Profile, beta: Profile) -> Self {
        RotSymMap {
            zeta: ZetaProfile::Closed(zeta),
            beta,
            conformal: false,
        }
    }

    /// Largest `|zeta' alpha - beta(zeta)|` over `nodes`; solved profiles
    /// use the derivative of the interpolant rather than the ODE.
    pub fn conformality_defect(&self, alpha: &Profile, nodes: &[f64]) -> f64 {
        nodes
            .iter()
            .map(|&r| {
                let (z, dz) = match &self.zeta {
                    ZetaProfile::Closed(p) => (p.value(r), p.jet(r)[1]),
                    ZetaProfile::Solved(s) => (s.value(r), s.interpolated_derivative(r)),
                };
                (dz * alpha.value(r) - self.beta.value(z)).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Two-jets of the domain warping function and of `zeta` with respect to
/// arclength, plus the arclength Jacobian `ds/dr`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct PointJets {
    alpha: [f64; 3],
    zeta: [f64; 3],
    jac: f64,
}

fn tension_from(j: &PointJets, b: Jet, q: f64) -> f64 {
    let [a0, a1, _] = j.alpha;
    let [_, z1, z2] = j.zeta;
    z2 + q * a1 / a0 * z1 - q * b[0] * b[1] / (a0 * a0)
}

/// Integrand of the conformal bienergy (or the bienergy when `conformal`
/// is false), including the volume element.
fn density(j: &PointJets, beta: &Profile, q: u32, conformal: bool) -> f64 {
    let a0 = j.alpha[0];
    if a0.abs() < POLE_THRESHOLD {
        return f64::NAN;
    }
    let qf = q as f64;
    let b = beta.jet(j.zeta[0]);
    let tau = tension_from(j, b, qf);
    let z1 = j.zeta[1];
    let fiber = qf * b[0] * b[0] / (a0 * a0);
    let mut e = tau * tau;
    if conformal {
        let dphi = z1 * z1 + fiber;
        let scal = scal_from_jet(j.alpha, q);
        let (ric_r, ric_f) = ric_from_jet(j.alpha, q);
        e += 2.0 / 3.0 * scal * dphi - 2.0 * (ric_r * z1 * z1 + ric_f * fiber);
    }
    0.5 * e * sphere_volume(q) * a0.powi(q as i32) * j.jac
}

fn original_jets(alpha: &Profile, map: &RotSymMap, r: f64) -> PointJets {
    let a = alpha.jet(r);
    let z = map.zeta.jet(r);
    PointJets {
        alpha: [a[0], a[1], a[2]],
        zeta: [z[0], z[1], z[2]],
        jac: 1.0,
    }
}

/// Jets of the same map for the metric `e^{2 rho} g`, written as the warped
/// product `ds^2 + (e^rho alpha)^2 g_{S^q}` with `ds = e^rho dr`.
fn conformal_jets(alpha: &Profile, map: &RotSymMap, rho: &Profile, r: f64) -> PointJets {
    let a = alpha.jet(r);
    let z = map.zeta.jet(r);
    let p = rho.jet(r);
    let e = p[0].exp();
    PointJets {
        alpha: [
            e * a[0],
            p[1] * a[0] + a[1],
            (p[2] * a[0] + p[1] * a[1] + a[2]) / e,
        ],
        zeta: [z[0], z[1] / e, (z[2] - p[1] * z[1]) / (e * e)],
        jac: e,
    }
}

/// `zeta'' + q (alpha'/alpha) zeta' - q beta(zeta) beta'(zeta) / alpha^2`,
/// the normal-direction component of the tension field.
pub fn rotsym_tension(alpha: &Profile, map: &RotSymMap, q: u32, r: f64) -> Result<f64> {
    let j = original_jets(alpha, map, r);
    if j.alpha[0].abs() < POLE_THRESHOLD {
        return Err(Error::Singularity(format!("warping function vanishes at r = {r}")));
    }
    Ok(tension_from(&j, map.beta.jet(j.zeta[0]), q as f64))
}

/// Integrates a density over the profile interval, truncating at poles and
/// extrapolating the truncation margin to zero.
fn integrate_profile<F: Fn(f64) -> f64>(domain: &WarpedProfile, q: u32, spec: &QuadratureSpec, f: F) -> Result<f64> {
    let (lo_pole, hi_pole) = (domain.lo_is_pole(), domain.hi_is_pole());
    let at = |eps: f64| {
        let a = if lo_pole { domain.lo + eps } else { domain.lo };
        let b = if hi_pole { domain.hi - eps } else { domain.hi };
        quadrature::checked(&f, a, b, spec)
    };
    let eps = spec.pole_margin;
    let full = at(eps)?;
    if !(lo_pole || hi_pole) || !spec.richardson {
        return Ok(full);
    }
    let half = at(eps / 2.0)?;
    let gain = 2f64.powi(q as i32 + 1) - 1.0;
    Ok(half + (half - full) / gain)
}

/// `E_2^c(phi)` for `phi : S^q x I -> S^q x J` by quadrature in `r`.
pub fn c_bienergy_rotsym(domain: &WarpedProfile, map: &RotSymMap, q: u32, spec: &QuadratureSpec) -> Result<f64> {
    integrate_profile(domain, q, spec, |r| density(&original_jets(&domain.alpha, map, r), &map.beta, q, true))
}

/// The bienergy `E_2(phi) = (1/2) int |tau|^2`.
pub fn bienergy_rotsym(domain: &WarpedProfile, map: &RotSymMap, q: u32, spec: &QuadratureSpec) -> Result<f64> {
    integrate_profile(domain, q, spec, |r| density(&original_jets(&domain.alpha, map, r), &map.beta, q, false))
}

/// `E_2^c` of the same map for the domain metric `e^{2 rho} g`.
pub fn c_bienergy_conformal(
    domain: &WarpedProfile,
    map: &RotSymMap,
    rho: &Profile,
    q: u32,
    spec: &QuadratureSpec,
) -> Result<f64> {
    integrate_profile(domain, q, spec, |r| {
        density(&conformal_jets(&domain.alpha, map, rho, r), &map.beta, q, true)
    })
}

/// Energies before and after the conformal change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvarianceCheck {
    pub original: f64,
    pub conformal: f64,
    /// `|conformal - original| / max(|original|, |conformal|)`.
    pub relative_deviation: f64,
}

pub fn conformal_invariance_check(
    domain: &WarpedProfile,
    map: &RotSymMap,
    rho: &Profile,
    q: u32,
    spec: &QuadratureSpec,
) -> Result<InvarianceCheck> {
    let original = c_bienergy_rotsym(domain, map, q, spec)?;
    let conformal = c_bienergy_conformal(domain, map, rho, q, spec)?;
    let scale = original.abs().max(conformal.abs());
    let relative_deviation = if scale == 0.0 {
        0.0
    } else {
        (conformal - original).abs() / scale
    };
    Ok(InvarianceCheck {
        original,
        conformal,
        relative_deviation,
    })
}

/// Scalar curvature of `e^{2 rho} g` at `r`, first by the conformal-change
/// formula `e^{-2 rho}(Scal + (m-1)(2 Delta rho - (m-2)|grad rho|^2))` with
/// `Delta = -tr Hess`, then from the reparametrized warped product.
pub fn conformal_scal_crosscheck(alpha: &Profile, rho: &Profile, q: u32, r: f64) -> Result<(f64, f64)> {
    let a = alpha.jet(r);
    let scal = warped_scal(alpha, q, r)?;
    let p = rho.jet(r);
    let m = q as f64 + 1.0;
    let lap = -(p[2] + q as f64 * a[1] / a[0] * p[1]);
    let via_formula = (-2.0 * p[0]).exp() * (scal + (m - 1.0) * (2.0 * lap - (m - 2.0) * p[1] * p[1]));
    let j = conformal_jets(alpha, &RotSymMap::new(Profile::Identity, Profile::Identity), rho, r);
    Ok((via_formula, scal_from_jet(j.alpha, q)))
}

/// Ricci eigenvalues `(radial, fiber)` of `e^{2 rho} g`, by the
/// conformal-change formula and by reparametrization.
pub fn conformal_ric_crosscheck(alpha: &Profile, rho: &Profile, q: u32, r: f64) -> Result<((f64, f64), (f64, f64))> {
    let a = alpha.jet(r);
    let (ric_r, ric_f) = warped_ric(alpha, q, r)?;
    let p = rho.jet(r);
    let m = q as f64 + 1.0;
    let lap = -(p[2] + q as f64 * a[1] / a[0] * p[1]);
    let e2 = (-2.0 * p[0]).exp();
    let radial = e2 * (ric_r - (m - 2.0) * p[2] + lap);
    let fiber = e2 * (ric_f - (m - 2.0) * a[1] / a[0] * p[1] + lap - (m - 2.0) * p[1] * p[1]);
    let j = conformal_jets(alpha, &RotSymMap::new(Profile::Identity, Profile::Identity), rho, r);
    Ok(((radial, fiber), ric_from_jet(j.alpha, q)))
}

/// `2 beta'^3 - 2 beta' - beta beta' beta'' - beta^2 beta'''`; vanishes when
/// the four-dimensional warped product with profile `beta` has constant
/// scalar curvature.
pub fn beta_residual(beta: &Profile, z: f64) -> f64 {
    let [b0, b1, b2, b3] = beta.jet(z);
    2.0 * b1 * b1 * b1 - 2.0 * b1 - b0 * b1 * b2 - b0 * b0 * b3
}

/// `beta^2 (1 - beta'^2 + beta beta'')`, constant along solutions.
pub fn first_integral(beta: &Profile, z: f64) -> f64 {
    let [b0, b1, b2, _] = beta.jet(z);
    first_integral_state(&[b0, b1, b2])
}

pub fn first_integral_state(s: &[f64]) -> f64 {
    s[0] * s[0] * (1.0 - s[1] * s[1] + s[0] * s[2])
}

/// Integrates the residual equation as a first-order system in
/// `(beta, beta', beta'')` from `z0` to `z1`.
pub fn integrate_beta_equation(z0: f64, state: [f64; 3], z1: f64, opts: &OdeOptions) -> Result<Trajectory> {
    integrate(
        |_, s| {
            let (b, b1, b2) = (s[0], s[1], s[2]);
            vec![b1, b2, (2.0 * b1 * b1 * b1 - 2.0 * b1 - b * b1 * b2) / (b * b)]
        },
        z0,
        &state,
        z1,
        opts,
        |_, s| (!(s[0] > 0.0)).then(|| "beta left the positive half-line".to_string()),
    )
}

/// Domain of a conformal rotationally symmetric map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConformalDomain {
    /// `R^{q+1}` minus the origin, `alpha = r`.
    Euclidean,
    /// The round sphere, `alpha = sin r`.
    Sphere,
}

impl ConformalDomain {
    pub fn alpha(&self) -> Profile {
        match self {
            ConformalDomain::Euclidean => Profile::Identity,
            ConformalDomain::Sphere => Profile::sin(),
        }
    }
}

/// Numerical solution of `zeta' = sign beta(zeta) / alpha(r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalSolution {
    pub beta: Profile,
    pub domain: ConformalDomain,
    pub sign: f64,
    /// Pieces integrated away from the initial point, one per direction.
    pub pieces: Vec<Trajectory>,
    pub r_start: f64,
}

impl ConformalSolution {
    pub fn range(&self) -> (f64, f64) {
        let ends = self.pieces.iter().map(|p| p.end());
        let lo = ends.clone().fold(self.r_start, f64::min);
        let hi = ends.fold(self.r_start, f64::max);
        (lo, hi)
    }

    /// Interpolated `zeta(r)`.
    pub fn value(&self, r: f64) -> f64 {
        let piece = self
            .pieces
            .iter()
            .find(|p| (r - p.start()) * (p.end() - p.start()) >= 0.0)
            .unwrap_or(&self.pieces[0]);
        piece.interpolate(r).0[0]
    }

    /// Hermite derivative of the interpolant, independent of the ODE.
    pub fn interpolated_derivative(&self, r: f64) -> f64 {
        let piece = self
            .pieces
            .iter()
            .find(|p| (r - p.start()) * (p.end() - p.start()) >= 0.0)
            .unwrap_or(&self.pieces[0]);
        piece.interpolate(r).1[0]
    }

    /// Value from the interpolant, derivatives from the ODE.
    pub fn jet(&self, r: f64) -> Jet {
        let z = self.value(r);
        let a = self.domain.alpha().jet(r);
        let b = self.beta.jet(z);
        let s = self.sign;
        let z1 = s * b[0] / a[0];
        let z2 = s * (b[1] * z1 / a[0] - b[0] * a[1] / (a[0] * a[0]));
        let z3 = s
            * ((b[2] * z1 * z1 + b[1] * z2) / a[0] - b[1] * z1 * a[1] / (a[0] * a[0])
                - (b[1] * z1 * a[1] + b[0] * a[2]) / (a[0] * a[0])
                + 2.0 * b[0] * a[1] * a[1] / (a[0] * a[0] * a[0]));
        [z, z1, z2, z3]
    }
}

/// Solves `zeta' = sign beta(zeta)/alpha(r)` with `zeta(r_start) = zeta_start`
/// over `[r_lo, r_hi]`, integrating outward from `r_start` in both directions.
pub fn solve_conformal_profile(
    beta: &Profile,
    domain: ConformalDomain,
    sign: f64,
    (r_start, zeta_start): (f64, f64),
    (r_lo, r_hi): (f64, f64),
    opts: &OdeOptions,
) -> Result<RotSymMap> {
    if !(r_lo <= r_start && r_start <= r_hi && r_lo < r_hi) {
        return Err(Error::Domain(format!(
            "need r_lo <= r_start <= r_hi (got {r_lo}, {r_start}, {r_hi})"
        )));
    }
    let alpha = domain.alpha();
    let upper = match domain {
        ConformalDomain::Euclidean => f64::INFINITY,
        ConformalDomain::Sphere => PI,
    };
    if !(r_lo > 0.0 && r_hi < upper) {
        return Err(Error::Domain(format!("range ({r_lo}, {r_hi}) must avoid the coordinate poles")));
    }
    let rhs = |r: f64, y: &[f64]| vec![sign * beta.value(y[0]) / alpha.value(r)];
    let guard = |_: f64, y: &[f64]| {
        let b = beta.value(y[0]);
        if !(b > 0.0) {
            Some("zeta left the interval where beta > 0".to_string())
        } else if y[0].abs() > 1e12 {
            Some("solution blew up".to_string())
        } else {
            None
        }
    };
    let mut pieces = Vec::new();
    for end in [r_hi, r_lo] {
        if end != r_start {
            pieces.push(integrate(rhs, r_start, &[zeta_start], end, opts, guard)?);
        }
    }
    Ok(RotSymMap {
        zeta: ZetaProfile::Solved(ConformalSolution {
            beta: beta.clone(),
            domain,
            sign,
            pieces,
            r_start,
        }),
        beta: beta.clone(),
        conformal: true,
    })
}

/// A named configuration for the conformal invariance suite.
#[derive(Debug, Clone, PartialEq)]
pub struct ConformalPreset {
    pub name: &'static str,
    pub domain: WarpedProfile,
    pub map: RotSymMap,
    pub rho: Profile,
}

/// Round and deformed spheres and two balls, with assorted maps and
/// conformal factors.
pub fn preset_suite() -> Vec<ConformalPreset> {
    let sphere = WarpedProfile::round_sphere();
    let cos = |amp: f64| Profile::cos(amp, 1.0);
    vec![
        ConformalPreset {
            name: "identity-sphere",
            domain: sphere.clone(),
            map: RotSymMap::new(Profile::Identity, Profile::sin()),
            rho: cos(0.3),
        },
        ConformalPreset {
            name: "mobius-sphere",
            domain: sphere.clone(),
            map: RotSymMap::new(Profile::ArctanHalf(2.0), Profile::sin()),
            rho: cos(0.2),
        },
        ConformalPreset {
            name: "stretched-sphere",
            domain: sphere.clone(),
            map: RotSymMap::new(
                Profile::Sum(vec![Profile::Identity, Profile::Sin { amp: 0.3, freq: 1.0 }]),
                Profile::sin(),
            ),
            rho: Profile::Sum(vec![cos(0.2), Profile::cos(0.1, 2.0)]),
        },
        ConformalPreset {
            name: "sphere-to-hyperbolic",
            domain: sphere.clone(),
            map: RotSymMap::new(Profile::Sin { amp: 0.5, freq: 1.0 }, Profile::sinh()),
            rho: cos(0.3),
        },
        ConformalPreset {
            name: "sphere-to-euclidean",
            domain: sphere.clone(),
            map: RotSymMap::new(Profile::sin(), Profile::Identity),
            rho: cos(0.25),
        },
        ConformalPreset {
            name: "deformed-sphere",
            // sin r + 0.1 sin^3 r = 1.075 sin r - 0.025 sin 3r
            domain: WarpedProfile {
                alpha: Profile::Sum(vec![
                    Profile::Sin { amp: 1.075, freq: 1.0 },
                    Profile::Sin { amp: -0.025, freq: 3.0 },
                ]),
                ..sphere.clone()
            },
            map: RotSymMap::new(Profile::Identity, Profile::sin()),
            rho: Profile::Sum(vec![cos(0.2), Profile::Sin { amp: 0.1, freq: 2.0 }]),
        },
        // balls: rho' vanishes on the boundary sphere
        ConformalPreset {
            name: "flat-ball",
            domain: WarpedProfile {
                alpha: Profile::Identity,
                lo: 0.0,
                hi: 2.0,
            },
            map: RotSymMap::new(Profile::Polynomial(vec![0.0, 1.0, 0.0, 0.3]), Profile::sin()),
            rho: Profile::cos(0.2, PI / 2.0),
        },
        ConformalPreset {
            name: "hyperbolic-ball",
            domain: WarpedProfile {
                alpha: Profile::sinh(),
                lo: 0.0,
                hi: 1.5,
            },
            map: RotSymMap::new(Profile::Polynomial(vec![0.0, 1.0, 0.0, 0.2]), Profile::Identity),
            rho: Profile::Sum(vec![Profile::Constant(0.25), Profile::cos(0.25, PI / 1.5)]),
        },
    ]
}
