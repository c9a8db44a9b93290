use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbiharmonic"))
        .args(args)
        .env_remove("CBIHARMONIC_TOL")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

#[test]
fn hypersphere_rows() {
    let doc = json(&["classify", "hypersphere", "--m-max", "4"]);
    let proper: Vec<(u64, String)> = doc["results"]["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["totally_geodesic"] == false)
        .map(|s| (s["m"].as_u64().unwrap(), s["r2"]["exact"].as_str().unwrap().to_string()))
        .collect();
    let expect = [(1, "1/2"), (2, "1/3"), (3, "1/2"), (4, "3/4")];
    assert_eq!(proper, expect.map(|(m, r)| (m, r.to_string())));
}

#[test]
fn clifford_pair_row() {
    let doc = json(&["classify", "clifford", "--m1", "1", "--m2", "2"]);
    assert_eq!(doc["results"]["solutions"].as_array().unwrap().len(), 1);
    assert_eq!(doc["results"]["scan"][0]["polynomial"], "54T^3 - 63T^2 + 20T - 3");
}

#[test]
fn product_family_below_eight_is_empty() {
    let doc = json(&["classify", "hyperbolic", "--family", "product", "--m", "7"]);
    assert!(doc["results"]["product"]["solutions"].as_array().unwrap().is_empty());
}

#[test]
fn stability_examples() {
    for (args, index, nullity) in [
        (vec!["stability", "equator", "--m", "6"], 8, 28),
        (vec!["stability", "hypersphere", "--m", "4", "--r2", "3/4"], 1, 20),
        (vec!["stability", "equator", "--m", "1"], 0, 3),
    ] {
        let doc = json(&args);
        assert_eq!(doc["results"]["index"], index);
        assert_eq!(doc["results"]["nullity"], nullity);
        assert_eq!(doc["results"]["truncation"]["verified"], true);
    }
    let text = String::from_utf8(run(&["stability", "hypersphere", "--m", "2", "--r2", "1/3"]).stdout).unwrap();
    assert!(text.contains("\n  index: 1\n") && text.contains("\n  nullity: 6\n"));
}

#[test]
fn energy_curve_csv() {
    let out = run(&["energy-curve", "--m", "4", "--samples", "101"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,h,h_c,critical"));
    let critical: Vec<&str> = lines
        .filter(|l| l.ends_with(",true"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(critical, ["-0.5", "0", "0.5"]);
}

#[test]
fn residual_modes() {
    let doc = json(&["residual", "hypersphere", "--m", "5", "--r", "0.9"]);
    assert_eq!(doc["arithmetic"]["mode"], "float");
    assert_eq!(doc["results"]["is_c_biharmonic"], false);
    assert_ne!(doc["results"]["c_bitension"]["coefficient"], "0");

    let doc = json(&["residual", "hypersphere", "--m", "4", "--r2", "3/4"]);
    assert_eq!(doc["arithmetic"]["mode"], "exact");
    assert_eq!(doc["results"]["c_bitension"]["coefficient"]["exact"], "0");
    assert_eq!(doc["results"]["radius_validity"], true);
}

#[test]
fn tolerance_from_environment() {
    let args = ["--format", "json", "residual", "hypersphere", "--m", "4", "--r2", "0.7500001"];
    let strict: Value = serde_json::from_slice(&run(&args).stdout).unwrap();
    assert_eq!(strict["results"]["is_c_biharmonic"], false);
    let out = Command::new(env!("CARGO_BIN_EXE_cbiharmonic"))
        .args(args)
        .env("CBIHARMONIC_TOL", "1e-3")
        .output()
        .unwrap();
    let loose: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(loose["results"]["is_c_biharmonic"], true);
    assert_eq!(loose["tolerances"]["zero_test"], 1e-3);
}

#[test]
fn classified_rows_round_trip_through_residual() {
    let doc = json(&["classify", "clifford", "--m-max", "5", "--equal-radius-cap", "8"]);
    for s in doc["results"]["pairs"]["solutions"].as_array().unwrap() {
        let (m1, m2) = (s["m1"].to_string(), s["m2"].to_string());
        let root = &s["root"];
        let eval = |r1_sq: &str| {
            let r = json(&["residual", "clifford", "--m1", &m1, "--m2", &m2, "--r2", r1_sq]);
            r["results"]["c_bitension"]["value"].as_str().unwrap().parse::<f64>().unwrap()
        };
        if root["certified"] == "exact" {
            assert_eq!(eval(root["exact"].as_str().unwrap()), 0.0);
        } else {
            let (lo, hi) = (eval(root["lo"].as_str().unwrap()), eval(root["hi"].as_str().unwrap()));
            assert!(lo * hi < 0.0, "sign change across the isolating interval");
            assert!(eval(root["decimal"].as_str().unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn verify_suites_pass() {
    for suite in [&["verify", "conformal", "--m", "4"][..], &["verify", "ode"], &["verify", "crosscheck"]] {
        let doc = json(suite);
        assert_eq!(doc["passed"], true, "{suite:?}");
    }
    let doc = json(&["verify", "conformal", "--m", "5"]);
    assert_eq!(doc["parameters"]["expect"], "not-invariant");
    assert_eq!(doc["passed"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["classify", "hypersphere", "--m-max", "3"]), 0);
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["classify", "hypersphere", "--m-max", "0"]), 2);
    assert_eq!(code(&["classify", "hypersphere", "--m-max", "-1"]), 2);
    assert_eq!(code(&["stability", "hypersphere", "--m", "4", "--r2", "0.75"]), 2);
    assert_eq!(code(&["residual", "hypersphere", "--m", "4", "--r2", "3/2"]), 2);
    assert_eq!(code(&["residual", "hypersphere", "--m", "4", "--r2", "x"]), 2);
    assert_eq!(code(&["energy-curve", "--m", "4", "--samples", "1"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "hyperbolic", "--m-max", "9"][..],
        &["stability", "hypersphere", "--m", "3", "--r2", "1/2"],
        &["verify", "conformal", "--m", "4"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
