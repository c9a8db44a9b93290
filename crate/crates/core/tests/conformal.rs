use std::f64::consts::PI;

use cbiharmonic::conformal::{
    beta_residual, bienergy_rotsym, c_bienergy_rotsym, conformal_invariance_check, conformal_ric_crosscheck,
    conformal_scal_crosscheck, first_integral, first_integral_state, gauss_legendre, integrate_beta_equation,
    preset_suite, rotsym_tension, solve_conformal_profile, warped_ric, warped_scal, ConformalDomain, OdeOptions,
    Profile, QuadratureSpec, RotSymMap, WarpedProfile,
};
use cbiharmonic::models::energy::{energy_curve, sphere_volume};
use cbiharmonic::Error;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn constant_curvature_anchors() {
    assert!(close(warped_scal(&Profile::sin(), 3, PI / 3.0).unwrap(), 12.0, 1e-13));
    assert_eq!(warped_scal(&Profile::Identity, 3, 0.7).unwrap(), 0.0);
    assert_eq!(warped_ric(&Profile::Identity, 3, 0.7).unwrap(), (0.0, 0.0));
    assert!(close(warped_scal(&Profile::sinh(), 3, 1.0).unwrap(), -12.0, 1e-13));
    let (r, f) = warped_ric(&Profile::sin(), 3, 1.1).unwrap();
    assert!(close(r, 3.0, 1e-13) && close(f, 3.0, 1e-13));
    assert!(matches!(warped_scal(&Profile::sin(), 3, 0.0), Err(Error::Singularity(_))));
}

#[test]
fn harmonic_identities_have_zero_tension() {
    let id = RotSymMap::new(Profile::Identity, Profile::sin());
    for r in [0.3, 1.0, 2.5] {
        assert!(rotsym_tension(&Profile::sin(), &id, 3, r).unwrap().abs() < 1e-14);
    }
    let flat = RotSymMap::new(Profile::Identity, Profile::Identity);
    assert!(rotsym_tension(&Profile::Identity, &flat, 3, 1.3).unwrap().abs() < 1e-14);
}

/// `alpha^{-q} (alpha^q zeta')' - q beta beta' / alpha^2` by nested
/// fourth-order central differences of plain function values.
fn fd_tension(alpha: &dyn Fn(f64) -> f64, zeta: &dyn Fn(f64) -> f64, beta: &dyn Fn(f64) -> f64, q: i32, r: f64) -> f64 {
    let h = 1e-3;
    let d = |f: &dyn Fn(f64) -> f64, x: f64| {
        (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
    };
    let flux = |x: f64| alpha(x).powi(q) * d(zeta, x);
    let z = zeta(r);
    d(&flux, r) / alpha(r).powi(q) - q as f64 * beta(z) * d(beta, z) / alpha(r).powi(2)
}

#[test]
fn tension_matches_finite_differences() {
    // zeta' = zeta / sin r on the sphere, zeta = C tan(r/2), into R^4
    let c = 0.7;
    let map = solve_conformal_profile(
        &Profile::Identity,
        ConformalDomain::Sphere,
        1.0,
        (PI / 2.0, c),
        (0.2, 2.6),
        &OdeOptions::default(),
    )
    .unwrap();
    for i in 0..10 {
        let r = 0.3 + 0.2 * i as f64;
        let exact = fd_tension(&f64::sin, &|x: f64| c * (x / 2.0).tan(), &|z| z, 3, r);
        let got = rotsym_tension(&Profile::sin(), &map, 3, r).unwrap();
        assert!((exact - got).abs() < 1e-6, "r = {r}: {exact} vs {got}");
    }
    // non-conformal closed-form map
    let map = RotSymMap::new(Profile::Sin { amp: 0.5, freq: 1.0 }, Profile::sinh());
    for i in 0..10 {
        let r = 0.25 + 0.25 * i as f64;
        let exact = fd_tension(&f64::sin, &|x: f64| 0.5 * x.sin(), &f64::sinh, 3, r);
        let got = rotsym_tension(&Profile::sin(), &map, 3, r).unwrap();
        assert!((exact - got).abs() < 1e-6);
    }
}

#[test]
fn identity_of_four_sphere() {
    let spec = QuadratureSpec::default();
    let id = RotSymMap::new(Profile::Identity, Profile::sin());
    let e = c_bienergy_rotsym(&WarpedProfile::round_sphere(), &id, 3, &spec).unwrap();
    let vol = sphere_volume(4);
    assert!(close(e, 4.0 * vol, 1e-10), "{e} vs {}", 4.0 * vol);
    let (_, h_c) = energy_curve(4, 0.0).unwrap();
    assert!(close(e, h_c, 1e-10));
    assert!(bienergy_rotsym(&WarpedProfile::round_sphere(), &id, 3, &spec).unwrap().abs() < 1e-12);
}

#[test]
fn curves_have_equal_energies() {
    let spec = QuadratureSpec::default();
    let interval = WarpedProfile::new(Profile::Constant(1.0), 0.0, 1.5).unwrap();
    let map = RotSymMap::new(Profile::Square, Profile::sin());
    let c = c_bienergy_rotsym(&interval, &map, 0, &spec).unwrap();
    let plain = bienergy_rotsym(&interval, &map, 0, &spec).unwrap();
    assert!(plain > 0.0);
    assert!(close(c, plain, 1e-14));
}

#[test]
fn invariance_dichotomy() {
    let spec = QuadratureSpec::default();
    for p in preset_suite() {
        let four = conformal_invariance_check(&p.domain, &p.map, &p.rho, 3, &spec).unwrap();
        assert!(four.relative_deviation < 1e-8, "{}: {}", p.name, four.relative_deviation);
        for q in [2, 4] {
            let off = conformal_invariance_check(&p.domain, &p.map, &p.rho, q, &spec).unwrap();
            assert!(off.relative_deviation > 1e-3, "{} q = {q}: {}", p.name, off.relative_deviation);
        }
    }
}

#[test]
fn three_dimensional_regression() {
    let spec = QuadratureSpec::default();
    let map = RotSymMap::new(Profile::Sum(vec![Profile::Identity, Profile::Sin { amp: 0.3, freq: 1.0 }]), Profile::sin());
    let c = conformal_invariance_check(&WarpedProfile::round_sphere(), &map, &Profile::cos(0.3, 1.0), 2, &spec).unwrap();
    assert!(c.relative_deviation > 1e-3);
}

#[test]
fn trivial_conformal_factor_is_exact() {
    let spec = QuadratureSpec::default();
    for p in preset_suite() {
        for q in [2, 3, 4] {
            let c = conformal_invariance_check(&p.domain, &p.map, &Profile::Constant(0.0), q, &spec).unwrap();
            assert_eq!(c.relative_deviation, 0.0);
        }
    }
}

#[test]
fn curvature_crosschecks() {
    let (f, g) = conformal_scal_crosscheck(&Profile::sin(), &Profile::Sin { amp: 0.2, freq: 1.0 }, 3, 1.0).unwrap();
    assert!(close(f, g, 1e-9));
    // homothety
    for c0 in [-0.5, 0.3, 1.2] {
        let (f, g) = conformal_scal_crosscheck(&Profile::sin(), &Profile::Constant(c0), 3, 0.8).unwrap();
        assert!(close(f, (-2.0 * c0).exp() * 12.0, 1e-13) && close(g, f, 1e-13));
    }
    // stereographic factor flattens the round sphere
    for r in [0.3, 1.0, 2.0, 2.9] {
        let (f, g) = conformal_scal_crosscheck(&Profile::sin(), &Profile::Stereographic, 3, r).unwrap();
        assert!(f.abs() < 1e-11 && g.abs() < 1e-11, "{f} {g}");
    }
}

#[test]
fn laplacian_sign_is_pinned() {
    // Delta = -tr Hess: Delta rho = -(rho'' + q alpha'/alpha rho')
    let (alpha, rho, q, r) = (Profile::sin(), Profile::Sin { amp: 0.2, freq: 1.0 }, 3u32, 1.0);
    let (a, p) = (alpha.jet(r), rho.jet(r));
    let m = q as f64 + 1.0;
    let scal = warped_scal(&alpha, q, r).unwrap();
    let lap = -(p[2] + q as f64 * a[1] / a[0] * p[1]);
    let with = |l: f64| (-2.0 * p[0]).exp() * (scal + (m - 1.0) * (2.0 * l - (m - 2.0) * p[1] * p[1]));
    let (_, reparam) = conformal_scal_crosscheck(&alpha, &rho, q, r).unwrap();
    assert!(close(with(lap), reparam, 1e-12));
    assert!((with(-lap) - reparam).abs() > 0.1);
}

#[test]
fn beta_equation_examples() {
    for beta in [Profile::Identity, Profile::sin(), Profile::sinh()] {
        for z in [0.3, 0.9, 1.4] {
            assert!(beta_residual(&beta, z).abs() < 1e-10, "{beta} at {z}");
        }
    }
    assert!(first_integral(&Profile::Identity, 0.7).abs() < 1e-15);
    assert!(first_integral(&Profile::sin(), 0.7).abs() < 1e-15);
    // 2(2)^3 - 2(2) - 1(2)(2) - 1(0)
    assert_eq!(beta_residual(&Profile::Square, 1.0), 8.0);
}

#[test]
fn first_integral_is_conserved() {
    let opts = OdeOptions::default();
    for (state, end) in [([1.0, 0.5, -0.3], 2.5), ([0.8, -0.2, 0.4], 2.0), ([2.0, 1.0, 0.1], 0.5)] {
        let traj = integrate_beta_equation(1.0, state, end, &opts).unwrap();
        let a = first_integral_state(&state);
        for y in &traj.y {
            assert!((first_integral_state(y) - a).abs() < 1e-8);
        }
    }
}

#[test]
fn conformal_profiles_match_closed_forms() {
    let opts = OdeOptions::default();
    let grid: Vec<f64> = (1..40).map(|i| i as f64 * 0.075).collect();

    let map = solve_conformal_profile(&Profile::Identity, ConformalDomain::Euclidean, 1.0, (1.0, 1.7), (0.05, 3.0), &opts)
        .unwrap();
    for &r in &grid {
        assert!((map.zeta.jet(r)[0] - 1.7 * r).abs() < 1e-8);
    }
    assert!(map.conformality_defect(&Profile::Identity, &grid) < 1e-8);

    let c: f64 = 2.0;
    let map = solve_conformal_profile(
        &Profile::sin(),
        ConformalDomain::Sphere,
        1.0,
        (PI / 2.0, 2.0 * c.atan()),
        (1e-3, PI - 1e-3),
        &opts,
    )
    .unwrap();
    for &r in &grid {
        let exact = 2.0 * (c * (r / 2.0).tan()).atan();
        assert!((map.zeta.jet(r)[0] - exact).abs() < 1e-8);
    }
    assert!(map.conformality_defect(&Profile::sin(), &grid) < 1e-8);

    let spec = QuadratureSpec::default();
    // the solved profile only covers [1e-3, pi - 1e-3]
    let domain = WarpedProfile::new(Profile::sin(), 1e-3, PI - 1e-3).unwrap();
    let check = conformal_invariance_check(&domain, &map, &Profile::cos(0.3, 1.0), 3, &spec).unwrap();
    assert!(check.relative_deviation < 1e-8);
}

#[test]
fn blow_up_is_reported() {
    // zeta' = zeta^2 / r, zeta(1) = 1 gives zeta = 1 / (1 - ln r), singular at r = e
    let err = solve_conformal_profile(
        &Profile::Square,
        ConformalDomain::Euclidean,
        1.0,
        (1.0, 1.0),
        (0.5, 5.0),
        &OdeOptions::default(),
    )
    .unwrap_err();
    match err {
        Error::Integration { t, .. } => assert!(t < std::f64::consts::E && t > 2.5),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn gauss_legendre_is_exact_on_polynomials() {
    for n in [2usize, 5, 20] {
        let (x, w) = gauss_legendre(n);
        for deg in 0..2 * n {
            let sum: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((sum - exact).abs() < 1e-13, "n = {n}, deg = {deg}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn reparametrized_curvature_matches_conformal_formulas(
        r in 0.05f64..3.09,
        a in -0.4f64..0.4,
        b in -0.3f64..0.3,
        q in 1u32..6,
    ) {
        let rho = Profile::Sum(vec![Profile::cos(a, 1.0), Profile::Sin { amp: b, freq: 2.0 }]);
        for alpha in [Profile::sin(), Profile::Identity, Profile::sinh()] {
            let (f, g) = conformal_scal_crosscheck(&alpha, &rho, q, r).unwrap();
            prop_assert!(close(f, g, 1e-9), "{} vs {}", f, g);
            let ((fr, ff), (gr, gf)) = conformal_ric_crosscheck(&alpha, &rho, q, r).unwrap();
            prop_assert!(close(fr, gr, 1e-9) && close(ff, gf, 1e-9));
        }
    }
}
