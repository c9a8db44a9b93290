//! End-to-end acceptance suite: one pass/fail line per criterion.

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use cbiharmonic::arith::{int, parse_rational, rat, to_f64};
use cbiharmonic::classify::{clifford_condition, count_roots, ExactPolynomial};
use cbiharmonic::models::energy::{critical_t_squared_in_range, energy_curve};
use cbiharmonic::{cmc_residual, geometric_data, normalized_cmc_residual, residual, HypersurfaceFamily, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cbiharmonic"))
        .arg("--format")
        .arg("json")
        .args(args)
        .env_remove("CBIHARMONIC_TOL")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`{}` exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn array(v: &Value) -> &[Value] {
    v.as_array().map(Vec::as_slice).unwrap_or(&[])
}

fn exact(v: &Value) -> Rational {
    parse_rational(v.as_str().expect("string")).expect("rational").0
}

fn dec(v: &Value) -> f64 {
    v.as_str().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

fn hypersphere_classification() -> Outcome {
    let doc = cli(&["classify", "hypersphere", "--m-max", "12"])?;
    let sols = array(&doc["results"]["solutions"]);
    let mut proper = Vec::new();
    let mut geodesic = Vec::new();
    for s in sols {
        let m = s["m"].as_u64().unwrap();
        ensure(s["root"]["certified"] == "exact", || format!("m = {m}: root not exact"))?;
        let r2 = exact(&s["r2"]["exact"]);
        if s["totally_geodesic"] == true {
            ensure(r2 == int(1), || format!("geodesic row with r^2 = {r2}"))?;
            geodesic.push(m);
        } else {
            proper.push((m, r2));
        }
    }
    let expect = vec![(1, rat(1, 2)), (2, rat(1, 3)), (3, rat(1, 2)), (4, rat(3, 4))];
    ensure(proper == expect, || format!("non-geodesic rows {proper:?}"))?;
    ensure(geodesic == (1..=12).collect::<Vec<_>>(), || format!("r = 1 rows for m = {geodesic:?}"))?;
    Ok("m=1..4 at r^2 = 1/2, 1/3, 1/2, 3/4; r = 1 for m = 1..12; nothing else".into())
}

/// Root of `test` inside the certified interval, checked independently.
fn check_isolated(s: &Value, test: &ExactPolynomial) -> Result<f64, String> {
    let root = &s["root"];
    let (lo, hi) = (exact(&root["lo"]), exact(&root["hi"]));
    ensure(&hi - &lo < rat(1, 10_000_000_000), || "interval wider than 1e-10".into())?;
    let (a, b) = (test.eval(&lo), test.eval(&hi));
    ensure(a.signum() * b.signum() == int(-1), || "no sign change of the stated polynomial".into())?;
    let t = dec(&root["decimal"]);
    ensure(test.eval_f64(t).abs() < 1e-10, || "polynomial residual above 1e-10".into())?;
    ensure(dec(&s["residual_magnitude"]) < 1e-10, || "back-substitution residual above 1e-10".into())?;
    Ok(t)
}

fn clifford_classification() -> Outcome {
    let doc = cli(&["classify", "clifford", "--m-max", "4", "--equal-radius-cap", "4"])?;
    let sols = array(&doc["results"]["pairs"]["solutions"]);
    let pair = |m1: u64, m2: u64| -> Vec<&Value> {
        sols.iter().filter(|s| s["m1"] == m1 && s["m2"] == m2).collect()
    };
    // m = 2
    let p11 = pair(1, 1);
    ensure(p11.len() == 1 && exact(&p11[0]["root"]["exact"]) == rat(1, 2), || "(1,1) is not exactly T = 1/2".into())?;
    // m = 3
    let p12 = pair(1, 2);
    ensure(p12.len() == 1, || format!("(1,2) has {} roots", p12.len()))?;
    let t12 = check_isolated(p12[0], &ExactPolynomial::from_i64(&[-3, 20, -63, 54], "T").unwrap())?;
    // m = 4
    let p13 = pair(1, 3);
    ensure(p13.len() == 1, || format!("(1,3) has {} roots", p13.len()))?;
    let t13 = check_isolated(p13[0], &ExactPolynomial::from_i64(&[-1, 6, -28, 32], "T").unwrap())?;
    let p22 = pair(2, 2);
    ensure(p22.len() == 3, || format!("(2,2) has {} roots", p22.len()))?;
    let s3 = 1.0 / 3f64.sqrt();
    ensure(exact(&p22[1]["root"]["exact"]) == rat(1, 2), || "(2,2) middle root is not 1/2".into())?;
    for (s, want) in [(p22[0], (1.0 - s3) / 2.0), (p22[2], (1.0 + s3) / 2.0)] {
        let got = dec(&s["root"]["decimal"]);
        ensure((got - want).abs() < 1e-12, || format!("(2,2) root {got} vs {want}"))?;
        ensure(dec(&s["residual_magnitude"]) < 1e-10, || "(2,2) back-substitution".into())?;
    }
    ensure(sols.len() == 6, || format!("{} rows in total, expected 6", sols.len()))?;
    Ok(format!("(1,1): 1/2; (1,2): {t12:.12}; (1,3): {t13:.12}; (2,2): 1/2 and (1 +- 1/sqrt 3)/2"))
}

fn equal_radius() -> Outcome {
    let doc = cli(&["classify", "clifford", "--m-max", "2", "--equal-radius-cap", "30"])?;
    let mut pairs: Vec<(u64, u64)> = array(&doc["results"]["equal_radius"]["solutions"])
        .iter()
        .map(|s| {
            let (a, b) = (s["m1"].as_u64().unwrap(), s["m2"].as_u64().unwrap());
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort();
    ensure(pairs == [(1, 4), (3, 4)], || format!("found {pairs:?}"))?;
    // exact cross-check of every pair
    let half = rat(1, 2);
    let mut hits = Vec::new();
    for m1 in 1..30u32 {
        for m2 in 1..=(30 - m1) {
            if m1 != m2 && clifford_condition(m1, m2).eval(&half).is_zero() {
                hits.push((m1.min(m2) as u64, m1.max(m2) as u64));
            }
        }
    }
    hits.sort();
    hits.dedup();
    ensure(hits == pairs, || format!("direct scan gives {hits:?}"))?;
    Ok("{1,4} and {3,4} for m1 + m2 <= 30".into())
}

fn uniqueness() -> Outcome {
    for m2 in 1..=50 {
        let n = count_roots(&clifford_condition(1, m2), &int(0), &int(1)).map_err(|e| e.to_string())?;
        ensure(n == 1, || format!("m2 = {m2}: {n} roots"))?;
    }
    Ok("one root in (0,1) for m1 = 1, m2 = 1..50".into())
}

fn hyperbolic() -> Outcome {
    let doc = cli(&["classify", "hyperbolic", "--m-max", "20"])?;
    let r = &doc["results"];
    let mut eq = Vec::new();
    for s in array(&r["equidistant"]["solutions"]) {
        if s["totally_geodesic"] == true {
            continue;
        }
        let m = s["m"].as_i64().unwrap();
        let r2 = exact(&s["root"]["exact"]);
        ensure(r2 == rat(2 * m * m - 11 * m + 6, 6 * m), || format!("equidistant m = {m}: r^2 = {r2}"))?;
        eq.push(m);
    }
    ensure(eq == (5..=20).collect::<Vec<_>>(), || format!("equidistant solutions for m = {eq:?}"))?;
    for fam in ["horosphere", "geodesic_sphere"] {
        ensure(array(&r[fam]["solutions"]).is_empty(), || format!("{fam} has solutions"))?;
        let certs = array(&r[fam]["certificates"]);
        ensure(!certs.is_empty() && certs.iter().all(|c| c["verified"] == true), || {
            format!("{fam} lacks a verified positivity certificate")
        })?;
    }
    let prod = array(&r["product"]["solutions"]);
    let count = |m: i64, k: i64| prod.iter().filter(|s| s["m"] == m && s["k"] == k).count();
    for m in 2..=7 {
        ensure(prod.iter().all(|s| s["m"] != m), || format!("product m = {m} has roots"))?;
    }
    ensure(count(8, 1) == 2, || format!("product (8,1) has {} roots", count(8, 1)))?;
    for m in 9..=20 {
        let small = prod
            .iter()
            .filter(|s| s["m"] == m && s["k"] == 1)
            .any(|s| exact(&s["root"]["hi"]) < rat(1, 2));
        ensure(small, || format!("product (m={m}, k=1) has no root with r < 1/sqrt 2"))?;
    }
    Ok("equidistant m = 5..20 exact; horosphere/geodesic-sphere certified; product 0 roots m <= 7, 2 at (8,1), r < 1/sqrt 2 for m = 9..20".into())
}

fn equator() -> Outcome {
    for m in 1..=12u64 {
        let doc = cli(&["stability", "equator", "--m", &m.to_string()])?;
        let r = &doc["results"];
        let index = if m <= 4 { 0 } else { m + 2 };
        let nullity = if m == 2 || m == 4 { (m + 1) * (m + 4) / 2 } else { (m + 1) * (m + 2) / 2 };
        ensure(r["index"] == index && r["nullity"] == nullity, || {
            format!("m = {m}: index {}, nullity {}", r["index"], r["nullity"])
        })?;
        ensure(r["truncation"]["verified"] == true, || format!("m = {m}: truncation unverified"))?;
    }
    Ok("index and nullity for m = 1..12 with truncation certificates".into())
}

fn small_hyperspheres() -> Outcome {
    for (m, r2, nullity) in [(1, "1/2", 3), (2, "1/3", 6), (3, "1/2", 10), (4, "3/4", 20)] {
        let doc = cli(&["stability", "hypersphere", "--m", &m.to_string(), "--r2", r2])?;
        let r = &doc["results"];
        ensure(r["index"] == 1 && r["nullity"] == nullity, || {
            format!("(m={m}, r^2={r2}): index {}, nullity {}", r["index"], r["nullity"])
        })?;
        ensure(r["truncation"]["verified"] == true, || "truncation unverified".into())?;
        if m == 4 {
            let b = array(&r["breakdown"]);
            let j1 = b.iter().find(|e| e["stream"] == "block j=1").ok_or("no j=1 block")?;
            for key in ["a", "b", "d_sq"] {
                ensure(j1["block"][key]["exact"] == "0", || format!("j=1 block {key} = {}", j1["block"][key]))?;
            }
            let s0 = b.iter().find(|e| e["stream"] == "normal j=0").ok_or("no S_0 entry")?;
            ensure(s0["value"]["exact"] == "-64/3", || format!("S_0 coefficient {}", s0["value"]))?;
        }
    }
    Ok("index 1 with nullity 3, 6, 10, 20; (4,3/4) has the zero j=1 block and S_0 = -64/3".into())
}

fn random_family(rng: &mut ChaCha8Rng) -> HypersurfaceFamily {
    let m: u32 = rng.gen_range(1..=20);
    let m2 = m.max(2);
    let q: i64 = rng.gen_range(1..=200);
    let p: i64 = rng.gen_range(1..=q);
    let unit = rat(p, q); // (0, 1]
    let open = rat(p, q + 1); // (0, 1)
    let pos = rat(rng.gen_range(1..=500), rng.gen_range(1..=50));
    match rng.gen_range(0..9) {
        0 => HypersurfaceFamily::SphereInSphere { m, r2: unit },
        1 => HypersurfaceFamily::CliffordTorus { m1: m, m2: rng.gen_range(1..=20), r1_sq: open },
        2 => HypersurfaceFamily::HypEquidistant { m: m2, r2: pos - int(1) / int(q) },
        3 => HypersurfaceFamily::Horosphere { m: m2, a: pos },
        4 => HypersurfaceFamily::HypGeodesicSphere { m: m2, r2: pos },
        5 => HypersurfaceFamily::HypProduct { m: m2, k: rng.gen_range(0..m2), r2: pos },
        6 => HypersurfaceFamily::EuclideanHyperplane { m },
        7 => HypersurfaceFamily::EuclideanSphere { m, r2: pos },
        _ => HypersurfaceFamily::EuclideanCylinder { m: m2, k: rng.gen_range(1..m2), r2: pos },
    }
}

fn generic_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut per_family = std::collections::BTreeMap::new();
    for _ in 0..1000 {
        let f = random_family(&mut rng);
        let m = f.dimension();
        let data = geometric_data(&f).map_err(|e| format!("{f}: {e}"))?;
        let closed = residual(&f).map_err(|e| format!("{f}: {e}"))?.c_bitension;
        let generic = cmc_residual(&data, m);
        ensure(generic == closed, || format!("{f}: {generic:?} vs {closed:?}"))?;
        let normalized = normalized_cmc_residual(&data, m);
        ensure(normalized.coeff * int(m as i64) == closed.coeff, || format!("{f}: factor m"))?;
        *per_family.entry(f.name()).or_insert(0) += 1;
    }
    ensure(per_family.len() == 9, || "not every family was drawn".into())?;
    Ok(format!("1000 exact draws over {} families", per_family.len()))
}

fn conformal_invariance() -> Outcome {
    let four = cli(&["verify", "conformal", "--m", "4"])?;
    let presets = array(&four["results"]["presets"]);
    ensure(presets.len() >= 6, || format!("{} presets", presets.len()))?;
    let max = presets.iter().map(|p| dec(&p["relative_deviation"])).fold(0.0, f64::max);
    ensure(max < 1e-8, || format!("m = 4 deviation {max:e}"))?;
    let mut mins = Vec::new();
    for m in ["3", "5"] {
        let doc = cli(&["verify", "conformal", "--m", m])?;
        let min = array(&doc["results"]["presets"])
            .iter()
            .map(|p| dec(&p["relative_deviation"]))
            .fold(f64::INFINITY, f64::min);
        ensure(min > 1e-3, || format!("m = {m} deviation {min:e}"))?;
        mins.push(min);
    }
    Ok(format!(
        "{} presets: m=4 max {max:.1e}; m=3 min {:.1e}, m=5 min {:.1e}",
        presets.len(),
        mins[0],
        mins[1]
    ))
}

fn ode_suite() -> Outcome {
    let doc = cli(&["verify", "ode"])?;
    let r = &doc["results"];
    let worst = |key: &str, field: &str| array(&r[key]).iter().map(|x| dec(&x[field])).fold(0.0, f64::max);
    let (res, drift) = (worst("beta_equation", "max_residual"), worst("first_integral", "max_drift"));
    let (err, defect) = (
        worst("conformal_profiles", "closed_form_error"),
        worst("conformal_profiles", "conformality_defect"),
    );
    ensure(array(&r["beta_equation"]).len() == 3 && res < 1e-10, || format!("beta residual {res:e}"))?;
    ensure(drift < 1e-8, || format!("first-integral drift {drift:e}"))?;
    ensure(err < 1e-8 && defect < 1e-8, || format!("profile error {err:e}, defect {defect:e}"))?;
    ensure(doc["passed"] == true, || "suite reported failure".into())?;
    Ok(format!("residual {res:.1e}, drift {drift:.1e}, profile error {err:.1e}, defect {defect:.1e}"))
}

fn energy_curves() -> Outcome {
    for m in 1..=10u32 {
        let mi = m as i64;
        let formula = rat(-2 * mi * mi + 11 * mi - 6, 6 * mi);
        match critical_t_squared_in_range(m) {
            Some(u) => {
                ensure(m <= 4 && u == formula, || format!("m = {m}: t*^2 = {u}"))?;
                let r2 = int(1) - &u;
                let expect = [rat(1, 2), rat(1, 3), rat(1, 2), rat(3, 4)][m as usize - 1].clone();
                ensure(r2 == expect, || format!("m = {m}: 1 - t*^2 = {r2}"))?;
                // stationary: symmetric difference quotient vanishes
                let t = to_f64(&u).sqrt();
                let h = 1e-6;
                let slope = (energy_curve(m, t + h).unwrap().1 - energy_curve(m, t - h).unwrap().1) / (2.0 * h);
                ensure(slope.abs() < 1e-5, || format!("m = {m}: slope {slope:e} at t*"))?;
            }
            None => ensure(m >= 5 && (formula.is_negative() || formula >= int(1)), || format!("m = {m}: no t*"))?,
        }
        let (_, base) = energy_curve(m, 0.0).map_err(|e| e.to_string())?;
        for t in [-0.5, -0.3, -0.1, 0.1, 0.3, 0.5] {
            let (_, hc) = energy_curve(m, t).map_err(|e| e.to_string())?;
            let ok = if m <= 4 { hc > base } else { hc < base };
            ensure(ok, || format!("m = {m}, t = {t}: ordering fails"))?;
        }
    }
    Ok("t*^2 matches for m <= 4 with 1 - t*^2 = classified r^2; ordering holds for m = 1..10".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("hypersphere classification", hypersphere_classification),
        ("Clifford classification for m = 2, 3, 4", clifford_classification),
        ("equal-radius Clifford tori", equal_radius),
        ("Clifford uniqueness for m1 = 1", uniqueness),
        ("hyperbolic families", hyperbolic),
        ("equator index and nullity", equator),
        ("small hypersphere index and nullity", small_hyperspheres),
        ("closed forms agree with the CMC reduction", generic_agreement),
        ("conformal invariance dichotomy", conformal_invariance),
        ("profile ODE suite", ode_suite),
        ("energy-curve consistency", energy_curves),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {:>2}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
