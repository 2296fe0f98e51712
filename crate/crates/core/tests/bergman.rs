mod common;

use common::rel;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_4, PI};
use worm3::bergman::{
    cauchy_extend, derivative_in_l2, in_extension_region, in_w_prime, nebenhulle_report, norm_integral,
    norm_monte_carlo, radial_integral, rotation_average, sector_project, AnnulusContour, NormIntegralSpec, NormValue,
    DEFAULT_NODES,
};
use worm3::kernels::eval_e;
use worm3::{Error, Point3, C64};

fn spec(a: f64, b: f64, j: i32, k: i32, mu: f64) -> NormIntegralSpec {
    NormIntegralSpec { a, b, j, k, mu }
}

fn point(r1: f64, a1: f64, r2: f64, a2: f64, r3: f64, a3: f64) -> Point3 {
    Point3::new(C64::from_polar(r1, a1), C64::from_polar(r2, a2), C64::from_polar(r3, a3)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_symmetric_in_the_two_rotated_variables(a in -0.9f64..2.0, b in -1.0f64..1.0, j in -3i32..3, k in -3i32..3, mu in 0.5f64..4.0) {
        let x = norm_integral(&spec(a, b, j, k, mu)).unwrap().finite().unwrap();
        let y = norm_integral(&spec(a, b, k, j, mu)).unwrap().finite().unwrap();
        prop_assert!(x > 0.0);
        prop_assert!(rel(x, y) <= 1e-12);
    }

    #[test]
    fn laurent_sectors_are_recovered(j in -6i32..6, k in -6i32..6, c in -2.0f64..2.0, a2 in 0.0f64..6.2, a3 in 0.0f64..6.2) {
        let p = point(0.8, 0.3, 1.4, a2, 0.6, a3);
        let f = move |q: &Point3| C64::new(c, 1.0) * q.z2.powi(j) * q.z3.powi(k) + q.z1 * q.z2.powi(j + 1);
        let want = C64::new(c, 1.0) * p.z2.powi(j) * p.z3.powi(k);
        let got = sector_project(&f, j, k, &p, DEFAULT_NODES);
        prop_assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0));
        // character orthogonality: every other sector of z₂ʲz₃ᵏ vanishes
        let g = move |q: &Point3| q.z2.powi(j) * q.z3.powi(k);
        let scale = g(&p).norm().max(1.0);
        for (dj, dk) in [(1, 0), (0, -1), (3, 2), (-2, 5)] {
            prop_assert!(sector_project(&g, j + dj, k + dk, &p, DEFAULT_NODES).norm() <= 1e-13 * scale);
        }
    }

    #[test]
    fn projection_is_idempotent(j in -3i32..3, k in -3i32..3) {
        let p = point(0.9, -0.4, 1.1, 0.2, 0.7, 2.0);
        let f = |q: &Point3| {
            let e = eval_e(C64::new(0.5, 0.1), q).unwrap_or_default();
            e * (q.z2.powi(2) + q.z3.powi(-1) * q.z2) + q.z2.powi(-1) * q.z3.powi(3)
        };
        let once = |q: &Point3| sector_project(&f, j, k, q, 16);
        let twice = sector_project(&once, j, k, &p, 16);
        prop_assert!((twice - once(&p)).norm() <= 1e-13 * f(&p).norm().max(1.0));
    }

    #[test]
    fn cauchy_extension_is_stable_under_node_doubling(m in 0i32..3, j in -4i32..5, k in -4i32..5, t in 0.2f64..0.8, s in 0.2f64..0.8) {
        let a = -PI;
        let c1 = AnnulusContour::new(a, 256).unwrap();
        let c2 = AnnulusContour::new(a, 512).unwrap();
        let r = |u: f64| (0.5 * a + u * PI).exp();
        let p = Point3::new(C64::new(0.3, 0.2), C64::new(r(t), 0.0), C64::from_polar(r(s), 1.0)).unwrap();
        let f = move |z1: C64, z2: C64, z3: C64| z1.powi(m) * z2.powi(j) * z3.powi(k);
        let (v1, v2) = (cauchy_extend(&f, &c1, &p).unwrap(), cauchy_extend(&f, &c2, &p).unwrap());
        let want = f(p.z1, p.z2, p.z3);
        prop_assert!((v2 - v1).norm() <= 1e-9 * want.norm());
        prop_assert!((v2 - want).norm() <= 1e-9 * want.norm());
    }
}

#[test]
fn monte_carlo_agrees_with_the_nested_integral() {
    for (s, seed) in [(spec(0.5, 0.2, 0, -1, PI), 11), (spec(1.0, -0.3, 1, -2, 2.0), 12)] {
        let v = norm_integral(&s).unwrap().finite().unwrap();
        let mc = norm_monte_carlo(&s, 1 << 20, seed).unwrap();
        assert!(mc.stderr > 0.0);
        assert!((mc.mean - v).abs() <= 4.0 * mc.stderr, "{s:?}: {v} vs {mc:?}");
    }
}

#[test]
fn constant_integrand_gives_exact_volume() {
    // |E₀|²|z₂|⁻²|z₃|⁻² against the product measure is constant, so the sample variance is zero
    let s = spec(0.0, 0.0, -1, -1, PI);
    let v = norm_integral(&s).unwrap().finite().unwrap();
    let mc = norm_monte_carlo(&s, 100_000, 1).unwrap();
    assert_eq!(mc.stderr, 0.0);
    assert!(rel(v, mc.mean) <= 1e-12);
    assert!(rel(v, 4.0 * PI.powi(3) * PI * PI) <= 1e-12, "{v}");
}

#[test]
fn divergence_threshold_and_blow_up() {
    assert_eq!(norm_integral(&spec(-1.0, 0.0, 0, 0, 2.0)).unwrap(), NormValue::Divergent);
    assert_eq!(norm_integral(&spec(-1.5, 0.3, 2, -1, 2.0)).unwrap(), NormValue::Divergent);
    let vals: Vec<f64> = (1..=12)
        .map(|n| norm_integral(&spec(-1.0 + 0.5f64.powi(n), 0.1, 0, -1, 2.0)).unwrap().finite().unwrap())
        .collect();
    assert!(vals.windows(2).all(|w| w[1] > w[0]), "{vals:?}");
    assert!(norm_integral(&spec(0.0, 0.0, 0, 0, -1.0)).is_err());
}

#[test]
fn sobolev_exponent_classifier() {
    let nu = 0.5;
    for m in 0..4u32 {
        for s in [0.0, 0.25, 0.75, 1.5, 2.5] {
            let l2 = derivative_in_l2(m, s, nu);
            assert_eq!(l2, radial_integral(m, s, nu, 1.0) != NormValue::Divergent, "m={m} s={s}");
        }
    }
    assert!(derivative_in_l2(0, 0.0, 0.5) && !derivative_in_l2(1, 0.0, 0.5) && derivative_in_l2(1, 0.75, 0.5));
}

#[test]
fn single_variable_averages_compose_to_the_sector_projection() {
    let p = point(0.9, 0.1, 1.3, 0.7, 0.8, -0.6);
    let f = |q: &Point3| q.z2.powi(2) * q.z3 + q.z2.powi(-1) * q.z3.powi(4) + q.z1;
    let inner = |q: &Point3| rotation_average(&f, 3, 1, q, 32);
    let composed = rotation_average(&inner, 2, 2, &p, 32);
    let direct = sector_project(&f, 2, 1, &p, 32);
    assert!((composed - direct).norm() <= 1e-13 * direct.norm());
}

#[test]
fn contour_clearance_and_regions() {
    let c = AnnulusContour::new(-PI, 64).unwrap();
    let near = Point3::new(C64::new(0.1, 0.0), C64::new(c.inner_radius() * 1.01, 0.0), C64::new(1.0, 0.0)).unwrap();
    let f = |_: C64, _: C64, _: C64| C64::new(1.0, 0.0);
    assert!(matches!(cauchy_extend(&f, &c, &near), Err(Error::TooCloseToContour { .. })));
    let mu = 14.0;
    let rw = (-0.5 * PI + 0.25 * PI).exp();
    let w = Point3::new((-2.0 * C64::i() * PI).exp(), C64::new(rw, 0.0), C64::from_polar(rw, FRAC_PI_4)).unwrap();
    assert!(!in_w_prime(&w, mu) && in_extension_region(&w, -PI));
}

#[test]
fn extension_report_flags_the_non_integer_powers() {
    let r = nebenhulle_report(14.0, 256).unwrap();
    assert!(r.all_as_expected);
    assert_eq!(r.rows.len(), 14);
    for row in &r.rows {
        if row.expect_extends {
            assert!(row.rel_mismatch <= 1e-9 && row.doubling_change <= 1e-9, "{row:?}");
        } else {
            assert!(row.rel_mismatch > 1e-3, "{row:?}");
        }
    }
    assert!(!r.witness_in_w_prime && r.witness_in_extension_region);
    assert!(r.witness.iter().all(|w| w.rel_mismatch <= 1e-9));
    assert!(nebenhulle_report(4.0, 64).is_err());
}
