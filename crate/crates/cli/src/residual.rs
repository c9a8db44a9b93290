//! `residual`: tension, bitension and conformal bitension of one family
//! member.

use anyhow::Result;
use cbiharmonic::arith::{format_decimal, parse_rational};
use cbiharmonic::models::radius_validity;
use cbiharmonic::{residual, residual_f64, ArithmeticMode, HypersurfaceFamily, Rational, Scalar, Surd};
use clap::{Args, Subcommand};
use serde_json::{json, Value};

use crate::output::{self, rational, Document};

/// Radius given either directly or squared. Fractions are exact, decimals
/// switch to floating-point evaluation.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Radius {
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    r2: Option<String>,
}

impl Radius {
    /// Squared radius and whether any input was a decimal.
    fn squared(&self) -> Result<(Rational, bool)> {
        match (&self.r, &self.r2) {
            (Some(r), _) => {
                let (r, dec) = parse_rational(r)?;
                Ok((&r * &r, dec))
            }
            (None, Some(r2)) => Ok(parse_rational(r2)?),
            (None, None) => unreachable!("clap enforces the group"),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum ResidualFamily {
    /// S^m(r) in S^{m+1}.
    Hypersphere {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        radius: Radius,
    },
    /// S^{m1}(r1) x S^{m2}(r2) in S^{m1+m2+1}.
    Clifford {
        #[arg(long)]
        m1: u32,
        #[arg(long)]
        m2: u32,
        #[command(flatten)]
        radius: Radius,
    },
    /// Equidistant hypersurface of H^{m+1}.
    Equidistant {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        radius: Radius,
    },
    /// Horosphere of H^{m+1}; the family parameter `a` does not enter.
    Horosphere {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "1")]
        a: String,
    },
    /// Geodesic sphere of H^{m+1}.
    GeodesicSphere {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        radius: Radius,
    },
    /// S^k(r) x H^{m-k}(-1/(1+r^2)) in H^{m+1}.
    Product {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        radius: Radius,
    },
    /// Hyperplane of R^{m+1}.
    Hyperplane {
        #[arg(long)]
        m: u32,
    },
    /// Round sphere S^m(r) of R^{m+1}.
    EuclideanSphere {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        radius: Radius,
    },
    /// Cylinder S^k(r) x R^{m-k} of R^{m+1}.
    Cylinder {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        radius: Radius,
    },
}

impl ResidualFamily {
    /// The family member and whether it must be evaluated in floating point.
    pub fn build(&self) -> Result<(HypersurfaceFamily, bool)> {
        use HypersurfaceFamily as F;
        Ok(match self {
            ResidualFamily::Hypersphere { m, radius } => {
                let (r2, dec) = radius.squared()?;
                (F::SphereInSphere { m: *m, r2 }, dec)
            }
            ResidualFamily::Clifford { m1, m2, radius } => {
                let (r1_sq, dec) = radius.squared()?;
                (F::CliffordTorus { m1: *m1, m2: *m2, r1_sq }, dec)
            }
            ResidualFamily::Equidistant { m, radius } => {
                let (r2, dec) = radius.squared()?;
                (F::HypEquidistant { m: *m, r2 }, dec)
            }
            ResidualFamily::Horosphere { m, a } => {
                let (a, dec) = parse_rational(a)?;
                (F::Horosphere { m: *m, a }, dec)
            }
            ResidualFamily::GeodesicSphere { m, radius } => {
                let (r2, dec) = radius.squared()?;
                (F::HypGeodesicSphere { m: *m, r2 }, dec)
            }
            ResidualFamily::Product { m, k, radius } => {
                let (r2, dec) = radius.squared()?;
                (F::HypProduct { m: *m, k: *k, r2 }, dec)
            }
            ResidualFamily::Hyperplane { m } => (F::EuclideanHyperplane { m: *m }, false),
            ResidualFamily::EuclideanSphere { m, radius } => {
                let (r2, dec) = radius.squared()?;
                (F::EuclideanSphere { m: *m, r2 }, dec)
            }
            ResidualFamily::Cylinder { m, k, radius } => {
                let (r2, dec) = radius.squared()?;
                (F::EuclideanCylinder { m: *m, k: *k, r2 }, dec)
            }
        })
    }
}

/// `coefficient * sqrt(radicand)` with its numeric value.
fn surd_exact(s: &Surd<Rational>) -> Value {
    json!({
        "coefficient": rational(&s.coeff),
        "radicand": rational(&s.radicand),
        "value": format_decimal(s.to_f64()),
    })
}

fn surd_float(s: &Surd<f64>) -> Value {
    json!({
        "coefficient": format_decimal(s.coeff),
        "radicand": format_decimal(s.radicand),
        "value": format_decimal(s.to_f64()),
    })
}

pub fn run(family: &ResidualFamily, tolerance: f64) -> Result<Document> {
    let (f, float) = family.build()?;
    let mode = if float {
        ArithmeticMode::Float { tolerance }
    } else {
        ArithmeticMode::Exact
    };
    let mut doc = Document::new("residual", mode);
    if float {
        doc = doc.tolerance("zero_test", tolerance);
    }
    doc.parameters = output::family(&f).as_object().cloned().unwrap_or_default();
    let (mut results, magnitude) = if float {
        let r = residual_f64(&f, tolerance)?;
        let doc = json!({
            "tension": surd_float(&r.tension),
            "bitension": surd_float(&r.bitension),
            "c_bitension": surd_float(&r.c_bitension),
            "is_c_biharmonic": r.is_c_biharmonic,
        });
        (doc, r.c_bitension.to_f64().abs())
    } else {
        let r = residual(&f)?;
        let doc = json!({
            "tension": surd_exact(&r.tension),
            "bitension": surd_exact(&r.bitension),
            "c_bitension": surd_exact(&r.c_bitension),
            "is_c_biharmonic": r.is_c_biharmonic,
        });
        (doc, r.c_bitension.to_f64().abs())
    };
    results["c_bitension_magnitude"] = json!(format_decimal(magnitude));
    if let HypersurfaceFamily::SphereInSphere { m, r2 } = &f {
        results["radius_validity"] = json!(radius_validity(*m, &Rational::one_value(), r2));
    }
    doc.results = results;
    Ok(doc)
}
