//! `classify` subcommands.

use anyhow::Result;
use cbiharmonic::arith::format_rational;
use cbiharmonic::classify::{
    classify_clifford, classify_clifford_pair, classify_equidistant, classify_geodesic_sphere,
    classify_horosphere, classify_hyperspheres, classify_product, ClassificationResult, Solution,
};
use cbiharmonic::ArithmeticMode;
use clap::{Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::output::{self, decimal, Document};
use crate::UsageError;

#[derive(Debug, Subcommand)]
pub enum ClassifyTarget {
    /// Hyperspheres S^m(r) of S^{m+1}.
    Hypersphere {
        #[arg(long, default_value_t = 12)]
        m_max: u32,
    },
    /// Generalized Clifford tori S^{m1}(r1) x S^{m2}(r2) of S^{m+1}.
    Clifford {
        /// Scan every pair with m1 + m2 <= m-max.
        #[arg(long, conflicts_with_all = ["m1", "m2"])]
        m_max: Option<u32>,
        #[arg(long, requires = "m2")]
        m1: Option<u32>,
        #[arg(long, requires = "m1")]
        m2: Option<u32>,
        /// Largest m1 + m2 in the equal-radius scan.
        #[arg(long, default_value_t = 30)]
        equal_radius_cap: u32,
    },
    /// Hypersurfaces of hyperbolic space.
    Hyperbolic {
        #[arg(long, value_enum, default_value_t = HyperbolicFamily::All)]
        family: HyperbolicFamily,
        /// A single dimension.
        #[arg(long, conflicts_with = "m_max")]
        m: Option<u32>,
        /// Dimensions 2..=m-max.
        #[arg(long)]
        m_max: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HyperbolicFamily {
    Equidistant,
    Horosphere,
    GeodesicSphere,
    Product,
    All,
}

fn solution(s: &Solution) -> Value {
    let mut v = output::family(&s.family);
    let map = v.as_object_mut().unwrap();
    if !s.root.exact_root {
        // the stored parameter is only a point of the isolating interval
        for key in ["r2", "r1_sq", "a"] {
            if let Some(p) = map.get_mut(key) {
                *p = json!({ "decimal": output::root(&s.root)["decimal"] });
            }
        }
    }
    map.insert("root".into(), output::root(&s.root));
    map.insert("totally_geodesic".into(), json!(s.totally_geodesic));
    map.insert("residual_magnitude".into(), decimal(s.residual_magnitude));
    v
}

pub fn classification(r: &ClassificationResult) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            let mut v = json!({
                "label": e.label,
                "polynomial": e.polynomial.to_string(),
                "degree": e.polynomial.degree(),
                "interval": [format_rational(&e.lo), format_rational(&e.hi)],
                "root_count": e.root_count,
            });
            if let Some(note) = &e.note {
                v["note"] = json!(note);
            }
            v
        })
        .collect();
    let certificates: Vec<Value> = r
        .certificates
        .iter()
        .map(|c| {
            json!({
                "variable": c.variable,
                "floor": c.floor,
                "verified": c.verify(),
                "includes_zero": c.includes_zero(),
                "statement": c.to_string(),
            })
        })
        .collect();
    json!({
        "template": r.template.to_string(),
        "ranges": r.ranges,
        "solutions": r.solutions.iter().map(solution).collect::<Vec<_>>(),
        "scan": entries,
        "certificates": certificates,
        "unverified": r.unverified,
    })
}

fn positive(name: &str, v: u32) -> Result<u32> {
    if v == 0 {
        return Err(UsageError(format!("--{name} must be positive")).into());
    }
    Ok(v)
}

pub fn run(target: &ClassifyTarget) -> Result<Document> {
    match target {
        ClassifyTarget::Hypersphere { m_max } => {
            let m_max = positive("m-max", *m_max)?;
            let mut doc = Document::new("classify hypersphere", ArithmeticMode::Exact).param("m_max", m_max);
            doc.results = classification(&classify_hyperspheres(m_max)?);
            Ok(doc)
        }
        ClassifyTarget::Clifford {
            m_max,
            m1,
            m2,
            equal_radius_cap,
        } => {
            if let (Some(m1), Some(m2)) = (m1, m2) {
                let (m1, m2) = (positive("m1", *m1)?, positive("m2", *m2)?);
                let mut doc = Document::new("classify clifford", ArithmeticMode::Exact)
                    .param("m1", m1)
                    .param("m2", m2);
                doc.results = classification(&classify_clifford_pair(m1, m2)?);
                return Ok(doc);
            }
            let m_max = m_max.unwrap_or(4);
            if m_max < 2 {
                return Err(UsageError("--m-max must be at least 2".into()).into());
            }
            let cap = positive("equal-radius-cap", *equal_radius_cap)?;
            let c = classify_clifford(m_max, cap)?;
            let mut doc = Document::new("classify clifford", ArithmeticMode::Exact)
                .param("m_max", m_max)
                .param("equal_radius_cap", cap);
            let existence: Vec<Value> = c
                .existence
                .iter()
                .map(|(m1, m2, e)| json!({ "m1": m1, "m2": m2, "exists": e }))
                .collect();
            doc.results = json!({
                "pairs": classification(&c.pairs),
                "equal_radius": classification(&c.equal_radius),
                "existence": existence,
            });
            Ok(doc)
        }
        ClassifyTarget::Hyperbolic { family, m, m_max } => {
            let (lo, hi) = match (m, m_max) {
                (Some(m), _) => (*m, *m),
                (None, Some(n)) => (2, *n),
                (None, None) => (2, 20),
            };
            if lo < 2 || hi < lo {
                return Err(UsageError("hyperbolic families need m >= 2".into()).into());
            }
            let mut doc = Document::new("classify hyperbolic", ArithmeticMode::Exact)
                .param("family", family.to_possible_value().map(|v| v.get_name().to_string()))
                .param("m_lo", lo)
                .param("m_hi", hi);
            let mut results = Map::new();
            let all = *family == HyperbolicFamily::All;
            if all || *family == HyperbolicFamily::Equidistant {
                results.insert("equidistant".into(), classification(&classify_equidistant(lo, hi)?));
            }
            if all || *family == HyperbolicFamily::Horosphere {
                results.insert("horosphere".into(), classification(&classify_horosphere(lo, hi)?));
            }
            if all || *family == HyperbolicFamily::GeodesicSphere {
                results.insert(
                    "geodesic_sphere".into(),
                    classification(&classify_geodesic_sphere(lo, hi)?),
                );
            }
            if all || *family == HyperbolicFamily::Product {
                results.insert("product".into(), classification(&classify_product(lo, hi)?));
            }
            doc.results = Value::Object(results);
            Ok(doc)
        }
    }
}
