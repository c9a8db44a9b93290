//! Curvature of warped products `dr^2 + alpha(r)^2 g_{S^q}`.

use super::profile::Profile;
use crate::error::{Error, Result};

/// Warping function on an open interval.
#[derive(Debug, Clone, PartialEq)]
pub struct WarpedProfile {
    pub alpha: Profile,
    pub lo: f64,
    pub hi: f64,
}

/// `|alpha|` below this counts as a pole of the coordinates.
pub const POLE_THRESHOLD: f64 = 1e-12;

impl WarpedProfile {
    /// Checks `lo < hi` and `alpha > 0` on a grid of interior points.
    pub fn new(alpha: Profile, lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Domain(format!("interval ({lo}, {hi}) is empty")));
        }
        for i in 1..64 {
            let r = lo + (hi - lo) * i as f64 / 64.0;
            if !(alpha.value(r) > 0.0) {
                return Err(Error::Domain(format!("warping function {alpha} is not positive at r = {r}")));
            }
        }
        Ok(WarpedProfile { alpha, lo, hi })
    }

    /// The round sphere `S^{q+1}`.
    pub fn round_sphere() -> Self {
        WarpedProfile {
            alpha: Profile::sin(),
            lo: 0.0,
            hi: std::f64::consts::PI,
        }
    }

    pub fn lo_is_pole(&self) -> bool {
        self.alpha.value(self.lo).abs() < POLE_THRESHOLD
    }

    pub fn hi_is_pole(&self) -> bool {
        self.alpha.value(self.hi).abs() < POLE_THRESHOLD
    }
}

fn check(alpha: f64, r: f64) -> Result<()> {
    if alpha.abs() < POLE_THRESHOLD || !alpha.is_finite() {
        return Err(Error::Singularity(format!("warping function vanishes at r = {r}")));
    }
    Ok(())
}

/// Ricci eigenvalues `(radial, fiber)` from `[alpha, alpha', alpha'']`.
pub fn ric_from_jet(a: [f64; 3], q: u32) -> (f64, f64) {
    let q = q as f64;
    let radial = -q * a[2] / a[0];
    let fiber = -a[2] / a[0] + (q - 1.0) * (1.0 - a[1] * a[1]) / (a[0] * a[0]);
    (radial, fiber)
}

/// Scalar curvature from `[alpha, alpha', alpha'']`.
pub fn scal_from_jet(a: [f64; 3], q: u32) -> f64 {
    let qf = q as f64;
    -2.0 * qf * a[2] / a[0] + qf * (qf - 1.0) * (1.0 - a[1] * a[1]) / (a[0] * a[0])
}

pub fn warped_scal(alpha: &Profile, q: u32, r: f64) -> Result<f64> {
    let j = alpha.jet(r);
    check(j[0], r)?;
    Ok(scal_from_jet([j[0], j[1], j[2]], q))
}

pub fn warped_ric(alpha: &Profile, q: u32, r: f64) -> Result<(f64, f64)> {
    let j = alpha.jet(r);
    check(j[0], r)?;
    Ok(ric_from_jet([j[0], j[1], j[2]], q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_curvature_anchors() {
        let s = warped_scal(&Profile::sin(), 3, std::f64::consts::PI / 3.0).unwrap();
        assert!((s - 12.0).abs() < 1e-12);
        let (a, b) = warped_ric(&Profile::Identity, 3, 0.7).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
        assert_eq!(warped_scal(&Profile::Identity, 3, 0.7).unwrap(), 0.0);
        let h = warped_scal(&Profile::sinh(), 3, 1.0).unwrap();
        assert!((h + 12.0).abs() < 1e-12);
        let (a, b) = warped_ric(&Profile::sin(), 3, 1.0).unwrap();
        assert!((a - 3.0).abs() < 1e-12 && (b - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_at_zero() {
        assert!(matches!(warped_scal(&Profile::Identity, 3, 0.0), Err(Error::Singularity(_))));
    }

    #[test]
    fn validates_positivity() {
        assert!(WarpedProfile::new(Profile::sin(), 0.0, 4.0).is_err());
        assert!(WarpedProfile::new(Profile::sin(), 0.0, 3.0).is_ok());
        assert!(WarpedProfile::round_sphere().lo_is_pole());
    }
}
