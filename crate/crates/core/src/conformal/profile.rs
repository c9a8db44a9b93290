//! Closed-form scalar functions with derivatives up to third order.

use std::fmt;

use crate::error::{Error, Result};

/// Value and first three derivatives at a point.
pub type Jet = [f64; 4];

/// A smooth function of one variable given by a closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `x`
    Identity,
    Constant(f64),
    /// `amp * sin(freq x)`
    Sin { amp: f64, freq: f64 },
    /// `amp * cos(freq x)`
    Cos { amp: f64, freq: f64 },
    /// `amp * sinh(freq x)`
    Sinh { amp: f64, freq: f64 },
    /// Ascending coefficients.
    Polynomial(Vec<f64>),
    /// `c tan(x/2)`
    TanHalf(f64),
    /// `2 atan(c tan(x/2))`, a conformal self-map of the round sphere.
    ArctanHalf(f64),
    /// `-ln(1 + cos x)`, the conformal factor flattening the round sphere.
    Stereographic,
    /// `x^2`
    Square,
    Sum(Vec<Profile>),
}

impl Profile {
    pub fn sin() -> Self {
        Profile::Sin { amp: 1.0, freq: 1.0 }
    }

    pub fn sinh() -> Self {
        Profile::Sinh { amp: 1.0, freq: 1.0 }
    }

    pub fn cos(amp: f64, freq: f64) -> Self {
        Profile::Cos { amp, freq }
    }

    pub fn jet(&self, x: f64) -> Jet {
        match self {
            Profile::Identity => [x, 1.0, 0.0, 0.0],
            Profile::Constant(c) => [*c, 0.0, 0.0, 0.0],
            Profile::Sin { amp, freq } => {
                let (s, c) = (freq * x).sin_cos();
                let w = *freq;
                [amp * s, amp * w * c, -amp * w * w * s, -amp * w * w * w * c]
            }
            Profile::Cos { amp, freq } => {
                let (s, c) = (freq * x).sin_cos();
                let w = *freq;
                [amp * c, -amp * w * s, -amp * w * w * c, amp * w * w * w * s]
            }
            Profile::Sinh { amp, freq } => {
                let w = *freq;
                let (s, c) = ((w * x).sinh(), (w * x).cosh());
                [amp * s, amp * w * c, amp * w * w * s, amp * w * w * w * c]
            }
            Profile::Polynomial(coeffs) => {
                let mut out = [0.0; 4];
                for (order, slot) in out.iter_mut().enumerate() {
                    let mut acc = 0.0;
                    for (i, c) in coeffs.iter().enumerate().skip(order).rev() {
                        let falling: f64 = (0..order).map(|k| (i - k) as f64).product();
                        acc = acc * x + c * falling;
                    }
                    *slot = acc;
                }
                out
            }
            Profile::TanHalf(c) => {
                let u = (x / 2.0).tan();
                let d1 = (1.0 + u * u) / 2.0;
                let d2 = u * d1;
                let d3 = d1 * d1 + u * u * d1;
                [c * u, c * d1, c * d2, c * d3]
            }
            Profile::ArctanHalf(c) => {
                let (s, co) = x.sin_cos();
                let k = (1.0 - c * c) / 2.0;
                let d = (1.0 + c * c) / 2.0 + k * co;
                let dp = -k * s;
                let dpp = -k * co;
                let value = 2.0 * (c * (x / 2.0).tan()).atan();
                // keep the branch continuous past x = pi
                let value = if x.abs() > std::f64::consts::PI {
                    let turns = ((x + std::f64::consts::PI) / (2.0 * std::f64::consts::PI)).floor();
                    value + 2.0 * std::f64::consts::PI * turns
                } else {
                    value
                };
                [
                    value,
                    c / d,
                    -c * dp / (d * d),
                    -c * (dpp / (d * d) - 2.0 * dp * dp / (d * d * d)),
                ]
            }
            Profile::Stereographic => {
                let (s, c) = x.sin_cos();
                let one_c = 1.0 + c;
                [-one_c.ln(), s / one_c, 1.0 / one_c, s / (one_c * one_c)]
            }
            Profile::Square => [x * x, 2.0 * x, 2.0, 0.0],
            Profile::Sum(parts) => parts.iter().fold([0.0; 4], |acc, p| {
                let j = p.jet(x);
                [acc[0] + j[0], acc[1] + j[1], acc[2] + j[2], acc[3] + j[3]]
            }),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        self.jet(x)[0]
    }

    /// Parses `name` or `name:c1,c2,...`.
    ///
    /// Names: `id`, `sin[:amp,freq]`, `cos[:amp,freq]`, `sinh[:amp,freq]`,
    /// `const:c`, `poly:c0,c1,...`, `tanhalf:c`, `arctanhalf:c`,
    /// `stereographic`, `square`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, args) = match spec.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (spec.trim(), None),
        };
        let nums: Vec<f64> = match args {
            Some(a) => a
                .split(',')
                .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("profile coefficient {t:?}"))))
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let pair = |default: (f64, f64)| -> Result<(f64, f64)> {
            match nums.as_slice() {
                [] => Ok(default),
                [a] => Ok((*a, 1.0)),
                [a, f] => Ok((*a, *f)),
                _ => Err(Error::Parse(format!("too many coefficients in {spec:?}"))),
            }
        };
        let single = || -> Result<f64> {
            match nums.as_slice() {
                [c] => Ok(*c),
                _ => Err(Error::Parse(format!("{name} takes exactly one coefficient"))),
            }
        };
        Ok(match name {
            "id" | "identity" => Profile::Identity,
            "sin" => {
                let (amp, freq) = pair((1.0, 1.0))?;
                Profile::Sin { amp, freq }
            }
            "cos" => {
                let (amp, freq) = pair((1.0, 1.0))?;
                Profile::Cos { amp, freq }
            }
            "sinh" => {
                let (amp, freq) = pair((1.0, 1.0))?;
                Profile::Sinh { amp, freq }
            }
            "const" => Profile::Constant(single()?),
            "poly" => {
                if nums.is_empty() {
                    return Err(Error::Parse("poly needs coefficients".into()));
                }
                Profile::Polynomial(nums)
            }
            "tanhalf" => Profile::TanHalf(single()?),
            "arctanhalf" => Profile::ArctanHalf(single()?),
            "stereographic" => Profile::Stereographic,
            "square" => Profile::Square,
            _ => return Err(Error::Parse(format!("unknown profile {name:?}"))),
        })
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Identity => write!(f, "id"),
            Profile::Constant(c) => write!(f, "const:{c}"),
            Profile::Sin { amp, freq } => write!(f, "sin:{amp},{freq}"),
            Profile::Cos { amp, freq } => write!(f, "cos:{amp},{freq}"),
            Profile::Sinh { amp, freq } => write!(f, "sinh:{amp},{freq}"),
            Profile::Polynomial(c) => {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            Profile::TanHalf(c) => write!(f, "tanhalf:{c}"),
            Profile::ArctanHalf(c) => write!(f, "arctanhalf:{c}"),
            Profile::Stereographic => write!(f, "stereographic"),
            Profile::Square => write!(f, "square"),
            Profile::Sum(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}
