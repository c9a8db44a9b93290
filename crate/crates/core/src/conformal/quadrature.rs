//! Composite Gauss-Legendre quadrature with a panel-doubling self-check.

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite rule, pole truncation and convergence tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    /// Points per panel.
    pub order: usize,
    pub panels: usize,
    /// Distance kept from endpoints where the warping function vanishes.
    pub pole_margin: f64,
    /// Extrapolate the pole margin to zero.
    pub richardson: bool,
    /// Allowed change, relative to `max(1, |I|)`, when the panels double.
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            order: 20,
            panels: 64,
            pole_margin: 1e-4,
            richardson: true,
            tolerance: 1e-10,
        }
    }
}

/// Integral of `f` over `[a, b]` with `panels` equal panels.
pub fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize, panels: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + h / 2.0;
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            acc += w * f(mid + h / 2.0 * x);
        }
        total += acc * h / 2.0;
    }
    total
}

/// Integral with the panel-doubling self-check; returns the refined value.
pub fn checked<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let coarse = composite(f, a, b, spec.order, spec.panels);
    let refined = composite(f, a, b, spec.order, 2 * spec.panels);
    let scale = refined.abs().max(1.0);
    if !refined.is_finite() || (refined - coarse).abs() > spec.tolerance * scale {
        return Err(Error::Quadrature {
            panels: spec.panels,
            refined_panels: 2 * spec.panels,
            coarse,
            refined,
            tolerance: spec.tolerance,
        });
    }
    Ok(refined)
}
