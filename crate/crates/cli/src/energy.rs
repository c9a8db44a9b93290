//! `energy-curve`: the bienergy and conformal bienergy along the family of
//! hyperspheres through the equator.

use anyhow::Result;
use cbiharmonic::arith::{format_decimal, format_rational, to_f64};
use cbiharmonic::models::energy::{critical_t_squared_in_range, sample_energy_curve, CurveSample};
use cbiharmonic::ArithmeticMode;
use serde_json::json;

use crate::output::{decimal, rational, Document};

pub fn samples(m: u32, n: usize) -> Result<Vec<CurveSample>> {
    Ok(sample_energy_curve(m, n)?)
}

pub fn csv(rows: &[CurveSample]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "h", "h_c", "critical"])?;
    for r in rows {
        w.write_record([
            format_decimal(to_f64(&r.t)),
            format_decimal(r.h),
            format_decimal(r.h_c),
            r.critical.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn document(m: u32, rows: &[CurveSample]) -> Document {
    let mut doc = Document::new("energy-curve", ArithmeticMode::Exact)
        .param("m", m)
        .param("samples", rows.len());
    let critical = critical_t_squared_in_range(m);
    doc.results = json!({
        "critical_t_squared": critical.as_ref().map(rational),
        "samples": rows
            .iter()
            .map(|r| json!({
                "t": format_rational(&r.t),
                "h": decimal(r.h),
                "h_c": decimal(r.h_c),
                "critical": r.critical,
            }))
            .collect::<Vec<_>>(),
    });
    doc
}
