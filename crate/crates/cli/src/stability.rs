//! `stability` subcommands.

use anyhow::Result;
use cbiharmonic::arith::parse_rational;
use cbiharmonic::stability::{index_nullity_equator, index_nullity_hypersphere, IndexNullityReport};
use cbiharmonic::ArithmeticMode;
use clap::Subcommand;
use serde_json::{json, Value};

use crate::output::{rational, Document};
use crate::UsageError;

#[derive(Debug, Subcommand)]
pub enum StabilityTarget {
    /// The totally geodesic S^m in S^{m+1}.
    Equator {
        #[arg(long)]
        m: u32,
    },
    /// The small hypersphere S^m(r) in S^{m+1}.
    Hypersphere {
        #[arg(long)]
        m: u32,
        /// Squared radius as an exact fraction, e.g. 3/4.
        #[arg(long)]
        r2: String,
    },
}

fn report(r: &IndexNullityReport) -> Value {
    let breakdown: Vec<Value> = r
        .breakdown
        .iter()
        .map(|e| {
            let mut v = json!({
                "stream": e.stream.kind.to_string(),
                "laplace_eigenvalue": rational(&e.stream.laplace_eigenvalue),
                "multiplicity": e.stream.multiplicity,
            });
            if let Some(x) = &e.value {
                v["value"] = rational(x);
            }
            if let Some(b) = &e.block {
                v["block"] = json!({
                    "a": rational(&b.a),
                    "b": rational(&b.b),
                    "d_sq": rational(&b.d_sq),
                    "trace": rational(&b.trace),
                    "det": rational(&b.det),
                });
            }
            v["negative"] = json!(e.negative_count);
            v["zero"] = json!(e.zero_count);
            v
        })
        .collect();
    let bounds = |bs: &[cbiharmonic::stability::TruncationBound]| -> Vec<Value> {
        bs.iter()
            .map(|b| {
                json!({
                    "label": b.label,
                    "polynomial": b.polynomial.to_string(),
                    "root_bound": rational(&b.root_bound),
                })
            })
            .collect()
    };
    let (lambda_cut, mu_cut) = r.cut_eigenvalues();
    let t = &r.truncation;
    json!({
        "m": r.m,
        "r2": rational(&r.r2),
        "index": r.index,
        "nullity": r.nullity,
        "variational": r.variational,
        "breakdown": breakdown,
        "truncation": {
            "function_level": t.function_level,
            "divfree_level": t.divfree_level,
            "lambda_cut": rational(&lambda_cut),
            "mu_cut": rational(&mu_cut),
            "verified": r.truncation_verified(),
            "function_bounds": bounds(&t.function_bounds),
            "divfree_bounds": bounds(&t.divfree_bounds),
        },
    })
}

pub fn run(target: &StabilityTarget) -> Result<Document> {
    match target {
        StabilityTarget::Equator { m } => {
            let mut doc = Document::new("stability equator", ArithmeticMode::Exact).param("m", *m);
            let r = index_nullity_equator(*m)?;
            doc.passed = r.truncation_verified();
            doc.results = report(&r);
            Ok(doc)
        }
        StabilityTarget::Hypersphere { m, r2 } => {
            let (q, decimal) = parse_rational(r2)?;
            if decimal {
                return Err(UsageError("--r2 must be an exact fraction such as 3/4".into()).into());
            }
            let mut doc = Document::new("stability hypersphere", ArithmeticMode::Exact)
                .param("m", *m)
                .param("r2", rational(&q));
            let r = index_nullity_hypersphere(*m, &q)?;
            doc.passed = r.truncation_verified();
            doc.results = report(&r);
            Ok(doc)
        }
    }
}
