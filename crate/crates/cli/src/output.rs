//! Output documents and their text/JSON renderings.

use std::fmt::Write as _;

use cbiharmonic::arith::{format_decimal, format_rational, to_f64};
use cbiharmonic::classify::RootInterval;
use cbiharmonic::{ArithmeticMode, HypersurfaceFamily, Rational};
use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Result of one command: an ordered tree plus whether its checks passed.
#[derive(Debug, Clone)]
pub struct Document {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub mode: ArithmeticMode,
    pub tolerances: Map<String, Value>,
    pub results: Value,
    /// False when a verification inside the command failed.
    pub passed: bool,
}

impl Document {
    pub fn new(command: &str, mode: ArithmeticMode) -> Self {
        Document {
            command: command.to_string(),
            parameters: Map::new(),
            mode,
            tolerances: Map::new(),
            results: Value::Null,
            passed: true,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_string(), json!(value));
        self
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "parameters": self.parameters,
            "arithmetic": self.mode,
            "tolerances": self.tolerances,
            "results": self.results,
            "passed": self.passed,
            "version": VERSION,
        })
    }

    pub fn render(&self, format: Format) -> String {
        let value = self.to_value();
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                write_text(&mut out, &value, 0);
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".to_string()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".to_string()),
        Value::Object(o) if o.is_empty() => Some("{}".to_string()),
        _ => None,
    }
}

/// YAML-like `key: value` lines, nested entries indented by two spaces and
/// list items introduced by `- `.
fn write_text(out: &mut String, value: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        write_text(out, v, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        let mut nested = String::new();
                        write_text(&mut nested, item, indent + 2);
                        let body = &nested[indent + 2..];
                        write!(out, "{pad}- {body}").unwrap();
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap()).unwrap(),
    }
}

/// `{"exact": "p/q", "decimal": "..."}`.
pub fn rational(q: &Rational) -> Value {
    json!({ "exact": format_rational(q), "decimal": format_decimal(to_f64(q)) })
}

pub fn decimal(x: f64) -> Value {
    Value::String(format_decimal(x))
}

/// Exact roots as rationals; isolated roots as a decimal with the
/// certifying interval and its half-width.
pub fn root(r: &RootInterval) -> Value {
    if r.exact_root {
        json!({
            "exact": format_rational(&r.lo),
            "decimal": format_decimal(r.to_f64()),
            "certified": "exact",
        })
    } else {
        json!({
            "decimal": format_decimal(r.to_f64()),
            "error_bound": format_decimal(r.error_bound()),
            "lo": format_rational(&r.lo),
            "hi": format_rational(&r.hi),
            "certified": "sturm",
        })
    }
}

/// Family tag and its parameters.
pub fn family(f: &HypersurfaceFamily) -> Value {
    use HypersurfaceFamily::*;
    let mut map = Map::new();
    map.insert("family".into(), json!(f.name()));
    let mut put = |k: &str, v: Value| {
        map.insert(k.to_string(), v);
    };
    match f {
        SphereInSphere { m, r2 }
        | HypEquidistant { m, r2 }
        | HypGeodesicSphere { m, r2 }
        | EuclideanSphere { m, r2 } => {
            put("m", json!(m));
            put("r2", rational(r2));
        }
        CliffordTorus { m1, m2, r1_sq } => {
            put("m1", json!(m1));
            put("m2", json!(m2));
            put("r1_sq", rational(r1_sq));
        }
        Horosphere { m, a } => {
            put("m", json!(m));
            put("a", rational(a));
        }
        HypProduct { m, k, r2 } | EuclideanCylinder { m, k, r2 } => {
            put("m", json!(m));
            put("k", json!(k));
            put("r2", rational(r2));
        }
        EuclideanHyperplane { m } => put("m", json!(m)),
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_nests() {
        let mut doc = Document::new("demo", ArithmeticMode::Exact).param("m", 3);
        doc.results = json!({ "rows": [{ "a": 1, "b": [true] }, 2], "empty": [] });
        let text = doc.render(Format::Text);
        assert!(text.contains("command: demo\n"));
        assert!(text.contains("  rows:\n    - a: 1\n      b:\n        - true\n    - 2\n"));
        assert!(text.contains("  empty: []\n"));
        assert!(text.contains("arithmetic:\n  mode: exact\n"));
    }

    #[test]
    fn rationals_carry_both_forms() {
        let v = rational(&Rational::new(1.into(), 3.into()));
        assert_eq!(v["exact"], "1/3");
        assert_eq!(v["decimal"], "0.333333333333333");
    }
}
