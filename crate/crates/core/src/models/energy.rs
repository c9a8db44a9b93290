//! Bienergy and conformal bienergy along the family of parallel small
//! spheres `phi_t` through the totally geodesic equator of `S^{m+1}`.
//!
//! With `u = t^2`, `h_m = (1/2) m^2 w_m (1 - u) u` and
//! `h_m^c = (1/2) m^2 w_m (1 - u)(u + K)`, `K = (2/3)(m-1)(m-3)/m`.

use std::f64::consts::PI;

use crate::arith::{rat, Rational};
use crate::error::{Error, Result};

/// Volume of the unit sphere `S^m`.
pub fn sphere_volume(m: u32) -> f64 {
    let mut even = 2.0; // w_0
    let mut odd = 2.0 * PI; // w_1
    if m == 0 {
        return even;
    }
    for k in 2..=m {
        let next_from = if k % 2 == 0 { even } else { odd };
        let w = 2.0 * PI / (k as f64 - 1.0) * next_from;
        if k % 2 == 0 {
            even = w;
        } else {
            odd = w;
        }
    }
    if m.is_multiple_of(2) {
        even
    } else {
        odd
    }
}

/// The constant `K = (2/3)(m-1)(m-3)/m` shifting the conformal curve.
pub fn curve_shift(m: u32) -> Rational {
    let m = m as i64;
    rat(2 * (m - 1) * (m - 3), 3 * m)
}

/// `(1 - u) u` and `(1 - u)(u + K)`: the curves without the factor
/// `(1/2) m^2 w_m`, in exact arithmetic.
pub fn curve_shapes(m: u32, u: &Rational) -> (Rational, Rational) {
    let one = rat(1, 1);
    let plain = (&one - u) * u;
    let conformal = (&one - u) * (u + curve_shift(m));
    (plain, conformal)
}

/// `(h_m(t), h_m^c(t))` for `|t| <= 1`.
pub fn energy_curve(m: u32, t: f64) -> Result<(f64, f64)> {
    if m == 0 {
        return Err(Error::Domain("m >= 1".into()));
    }
    if !(t.abs() <= 1.0) {
        return Err(Error::Domain(format!("|t| <= 1 (got {t})")));
    }
    let mf = m as f64;
    let scale = 0.5 * mf * mf * sphere_volume(m);
    let u = t * t;
    let k = crate::arith::to_f64(&curve_shift(m));
    Ok((scale * (1.0 - u) * u, scale * (1.0 - u) * (u + k)))
}

/// Stationary value `t*^2 = (-2m^2 + 11m - 6)/(6m)` of `h_m^c` in `u = t^2`.
pub fn critical_t_squared(m: u32) -> Rational {
    let m = m as i64;
    rat(-2 * m * m + 11 * m - 6, 6 * m)
}

/// `t*^2` when it lies in `(0, 1)`, i.e. when the conformal curve has
/// critical points besides `t = 0`.
pub fn critical_t_squared_in_range(m: u32) -> Option<Rational> {
    let u = critical_t_squared(m);
    (u > rat(0, 1) && u < rat(1, 1)).then_some(u)
}

/// One row of a sampled curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub t: Rational,
    pub h: f64,
    pub h_c: f64,
    /// `t` is a critical point of `h_m^c`.
    pub critical: bool,
}

/// Samples both curves on `samples` equally spaced points of `[-1, 1]`.
pub fn sample_energy_curve(m: u32, samples: usize) -> Result<Vec<CurveSample>> {
    if samples < 2 {
        return Err(Error::Domain("samples >= 2".into()));
    }
    let crit = critical_t_squared_in_range(m);
    let n = samples as i64 - 1;
    (0..=n)
        .map(|i| {
            let t = rat(2 * i - n, n);
            let (h, h_c) = energy_curve(m, crate::arith::to_f64(&t))?;
            let u = &t * &t;
            let critical = u == rat(0, 1) || crit.as_ref() == Some(&u);
            Ok(CurveSample { t, h, h_c, critical })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volumes() {
        assert!((sphere_volume(1) - 2.0 * PI).abs() < 1e-14);
        assert!((sphere_volume(2) - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_volume(3) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((sphere_volume(4) - 8.0 * PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn value_at_zero() {
        for m in 1..=8u32 {
            let (h, hc) = energy_curve(m, 0.0).unwrap();
            let mf = m as f64;
            let expect = mf * sphere_volume(m) * (mf - 1.0) * (mf - 3.0) / 3.0;
            assert_eq!(h, 0.0);
            assert!((hc - expect).abs() <= 1e-12 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn critical_points() {
        assert_eq!(critical_t_squared(4), rat(1, 4));
        assert_eq!(critical_t_squared_in_range(5), None);
        let s = sample_energy_curve(4, 101).unwrap();
        let crit: Vec<_> = s.iter().filter(|r| r.critical).map(|r| r.t.clone()).collect();
        assert_eq!(crit, vec![rat(-1, 2), rat(0, 1), rat(1, 2)]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(energy_curve(3, 1.5).is_err());
        assert!(energy_curve(3, f64::NAN).is_err());
    }
}
