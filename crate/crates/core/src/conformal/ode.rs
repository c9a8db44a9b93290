//! Adaptive Dormand-Prince 5(4) integration with cubic Hermite dense output.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    /// Upper bound on the step, which also bounds the interpolation error.
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-10,
            h_init: 1e-4,
            h_max: 2e-3,
            max_steps: 1_000_000,
        }
    }
}

/// Accepted steps of an integration, with derivatives for interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub dy: Vec<Vec<f64>>,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `y' = f(t, y)` from `t0` to `t1` (either direction).
///
/// `guard` is called on every accepted state and may stop the integration
/// with a reason, e.g. when the solution leaves the domain of `f`.
pub fn integrate<F, G>(f: F, t0: f64, y0: &[f64], t1: f64, opts: &OdeOptions, guard: G) -> Result<Trajectory>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
    G: Fn(f64, &[f64]) -> Option<String>,
{
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let n = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k1 = f(t, &y);
    let mut traj = Trajectory {
        t: vec![t],
        y: vec![y.clone()],
        dy: vec![k1.clone()],
    };
    let fail = |t: f64, y: &[f64], reason: String| Error::Integration {
        t,
        last: y.to_vec(),
        reason,
    };
    if let Some(reason) = guard(t, &y) {
        return Err(fail(t, &y, reason));
    }
    let mut h = opts.h_init.min(opts.h_max).min((t1 - t0).abs());
    let mut steps = 0;
    while (t1 - t) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(fail(t, &y, "step limit reached".into()));
        }
        let remaining = (t1 - t).abs();
        let last = h >= remaining;
        if last {
            h = remaining;
        }
        let hs = h * dir;
        let mut k: Vec<Vec<f64>> = vec![k1.clone()];
        for s in 1..7 {
            let ys: Vec<f64> = (0..n)
                .map(|i| y[i] + hs * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>())
                .collect();
            k.push(f(t + C[s] * hs, &ys));
        }
        let y_new: Vec<f64> = (0..n)
            .map(|i| y[i] + hs * (0..6).map(|j| A[6][j] * k[j][i]).sum::<f64>())
            .collect();
        let err = (0..n)
            .map(|i| {
                let e = hs * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
                let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                (e / sc).powi(2)
            })
            .sum::<f64>()
            / n as f64;
        let err = err.sqrt();
        if !err.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            h /= 4.0;
            if h < 1e-14 {
                return Err(fail(t, &y, "solution is not finite".into()));
            }
            continue;
        }
        if err <= 1.0 {
            t = if last { t1 } else { t + hs };
            y = y_new;
            k1 = k[6].clone();
            if let Some(reason) = guard(t, &y) {
                return Err(fail(t, &y, reason));
            }
            traj.t.push(t);
            traj.y.push(y.clone());
            traj.dy.push(k1.clone());
        }
        let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * factor).min(opts.h_max);
        if h < 1e-14 {
            return Err(fail(t, &y, "step size underflow".into()));
        }
    }
    Ok(traj)
}

impl Trajectory {
    pub fn start(&self) -> f64 {
        self.t[0]
    }

    pub fn end(&self) -> f64 {
        *self.t.last().unwrap()
    }

    fn segment(&self, t: f64) -> usize {
        let ascending = self.end() >= self.start();
        let pos = if ascending {
            self.t.partition_point(|&s| s <= t)
        } else {
            self.t.partition_point(|&s| s >= t)
        };
        pos.clamp(1, self.t.len() - 1) - 1
    }

    /// Cubic Hermite interpolation of the state and its derivative.
    pub fn interpolate(&self, t: f64) -> (Vec<f64>, Vec<f64>) {
        if self.t.len() == 1 {
            return (self.y[0].clone(), self.dy[0].clone());
        }
        let i = self.segment(t);
        let (t0, t1) = (self.t[i], self.t[i + 1]);
        let h = t1 - t0;
        let s = (t - t0) / h;
        let (h00, h10, h01, h11) = (
            2.0 * s.powi(3) - 3.0 * s * s + 1.0,
            s.powi(3) - 2.0 * s * s + s,
            -2.0 * s.powi(3) + 3.0 * s * s,
            s.powi(3) - s * s,
        );
        let (d00, d10, d01, d11) = (
            6.0 * s * s - 6.0 * s,
            3.0 * s * s - 4.0 * s + 1.0,
            -6.0 * s * s + 6.0 * s,
            3.0 * s * s - 2.0 * s,
        );
        let (y0, y1, f0, f1) = (&self.y[i], &self.y[i + 1], &self.dy[i], &self.dy[i + 1]);
        let value = (0..y0.len())
            .map(|k| h00 * y0[k] + h10 * h * f0[k] + h01 * y1[k] + h11 * h * f1[k])
            .collect();
        let deriv = (0..y0.len())
            .map(|k| (d00 * y0[k] + d01 * y1[k]) / h + d10 * f0[k] + d11 * f1[k])
            .collect();
        (value, deriv)
    }
}
