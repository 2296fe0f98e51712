mod common;

use common::rel;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};
use worm3::geometry::nu;
use worm3::kernels::{
    asymptotic_d, ell, eval_e, in_d_mu, kernel_quadrature, kernel_quadrature_d, residue_contour, residue_formula,
    reproduce, spatial_norm_sq, spectral_norm_sq, unwind, wind, wound_integrand_sides, Hat, KernelSettings,
    SpectralProfile, StripGrid, StripWeight,
};
use worm3::quadrature::Panels;
use worm3::{Point3, C64};

/// ∫ω(y)e^{−2yξ}dy by Gauss–Legendre on the smooth pieces of ω.
fn laplace_oracle(w: &StripWeight, xi: f64) -> f64 {
    Panels::new(32).integrate_breaks(&w.breakpoints(), 8, |y| w.spatial(y) * (-2.0 * y * xi).exp())
}

#[test]
fn spectral_weight_is_the_laplace_transform_of_the_spatial_weight() {
    for (mu, j, k) in [(PI, -1, -1), (2.0, 0, -1), (3.2, 1, -2), (1.7, 2, 0)] {
        let w = StripWeight::new(mu, j, k).unwrap();
        for i in 0..50 {
            let xi = -1.5 + 3.0 * i as f64 / 49.0;
            let (s, o) = (w.spectral(xi), laplace_oracle(&w, xi));
            assert!(rel(s, o) <= 1e-7, "mu={mu} ({j},{k}) xi={xi}: {s} vs {o}");
        }
    }
}

#[test]
fn symmetric_weight_closed_form_and_mass() {
    for mu in [0.5, PI, 3.2, 14.0] {
        let w = StripWeight::new(mu, -1, -1).unwrap();
        for xi in [-2.0, -0.3, 0.01, 0.7, 1.9] {
            let direct = PI * PI * (2.0 * mu * xi).sinh().powi(2) * (PI * xi).sinh() / xi.powi(3);
            assert!(rel(w.spectral(xi), direct) <= 1e-12);
        }
        assert!(rel(w.mass(), 4.0 * PI.powi(3) * mu * mu) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn weight_is_nonnegative_and_supported_in_the_strip(mu in 0.3f64..6.0, j in -3i32..3, k in -3i32..3, t in -1.2f64..1.2) {
        let w = StripWeight::new(mu, j, k).unwrap();
        let y = t * w.beta();
        let v = w.spatial(y);
        prop_assert!(v >= 0.0);
        if y.abs() >= w.beta() {
            prop_assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn kernel_is_hermitian(x in -8.0f64..8.0, y in -3.0f64..3.0, x2 in -8.0f64..8.0, y2 in -3.0f64..3.0) {
        let (z, w) = (C64::new(x, y), C64::new(x2, y2));
        let a = kernel_quadrature(PI, z, w).unwrap().value;
        let b = kernel_quadrature(PI, w, z).unwrap().value;
        prop_assert!((a - b.conj()).norm() <= 1e-9 * a.norm().max(1e-300));
    }

    #[test]
    fn unwinding_round_trip(r in 0.2f64..3.0, a in -1.4f64..1.4, t2 in -3.0f64..3.0, t3 in -3.0f64..3.0, s2 in 0.0f64..TAU, s3 in 0.0f64..TAU) {
        let z1 = C64::from_polar(r, a + t2 + t3);
        let p = Point3::from_polar(z1, t2, s2, t3, s3);
        prop_assume!(in_d_mu(&p, PI));
        let (w1, w2, w3) = unwind(&p).unwrap();
        let q = wind(w1, w2, w3);
        prop_assert!((q.z1 - p.z1).norm() <= 1e-12 * r);
        // E_1 is z₁ itself
        prop_assert!((eval_e(C64::new(1.0, 0.0), &p).unwrap() - p.z1).norm() <= 1e-12 * r);
        let (lhs, rhs) = wound_integrand_sides(&p, &p, 0.8).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm());
        prop_assert!((ell(&p).unwrap().im - (a + t2 + t3)).abs() <= 1e-12);
    }
}

#[test]
fn quadrature_matches_gauss_legendre_oracle() {
    let mu = PI;
    let gl = Panels::new(40);
    let f = |xi: f64, d: C64| {
        let r = xi.powi(3) / (2.0 * PI.powi(3) * (2.0 * mu * xi).sinh().powi(2) * (PI * xi).sinh());
        (C64::new(0.0, 1.0) * d * xi).exp() * r
    };
    let breaks: Vec<f64> = (0..=80).map(|i| -20.0 + 0.5 * i as f64).collect();
    for d in [C64::new(0.0, 0.0), C64::new(2.5, 1.0), C64::new(-9.0, -3.0), C64::new(13.0, 0.0)] {
        let re = gl.integrate_breaks(&breaks, 1, |x| f(x, d).re);
        let im = gl.integrate_breaks(&breaks, 1, |x| f(x, d).im);
        let o = C64::new(re, im);
        let q = kernel_quadrature_d(mu, d, &KernelSettings::default()).unwrap().value;
        assert!((q - o).norm() <= 1e-9 * o.norm(), "{d}: {q} vs {o}");
    }
}

#[test]
fn residues_match_the_closed_form() {
    for mu in [2.0, PI, 5.0] {
        let v = nu(mu);
        let r = v.min(1.0 - v).min(0.5 * v) / 4.0;
        for d in [C64::new(7.0, 0.0), C64::new(8.5, -1.0), C64::new(-4.0, 0.5)] {
            for upper in [true, false] {
                let num = residue_contour(mu, d, upper, r, 512);
                let f = residue_formula(mu, d, upper).unwrap();
                assert!((num - f).norm() <= 1e-8 * f.norm(), "mu={mu} d={d}: {num} vs {f}");
            }
        }
    }
}

#[test]
fn asymptotic_error_shrinks_far_from_the_wall() {
    let mu = PI;
    let err = |x: f64| {
        let d = C64::new(x, 0.0);
        (kernel_quadrature_d(mu, d, &KernelSettings::default()).unwrap().value - asymptotic_d(mu, d).unwrap()).norm()
    };
    let (e10, e20, e30) = (err(10.0), err(20.0), err(30.0));
    assert!(e20 < e10 && e30 < e20, "{e10} {e20} {e30}");
}

fn random_profile(rng: &mut ChaCha8Rng) -> SpectralProfile {
    let n = rng.gen_range(1..4);
    SpectralProfile {
        hats: (0..n)
            .map(|_| Hat {
                center: rng.gen_range(-1.5..1.5),
                half_width: rng.gen_range(0.3..1.2),
                coef: C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            })
            .collect(),
    }
}

#[test]
fn paley_wiener_norms_agree_on_random_profiles() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let grid = StripGrid { x_max: 1000.0, ..StripGrid::for_norms() };
    for i in 0..10 {
        let f = random_profile(&mut rng);
        let (j, k) = (rng.gen_range(-2..2), rng.gen_range(-2..2));
        let w = StripWeight::new(rng.gen_range(1.0..3.5), j, k).unwrap();
        let (s, sp) = (spectral_norm_sq(&f, &w), spatial_norm_sq(&f, &w, &grid));
        assert!(rel(s, sp) <= 1e-4, "profile {i}: {s} vs {sp}");
    }
}

#[test]
fn kernel_reproduces_test_functions() {
    let mu = PI;
    let f = SpectralProfile {
        hats: vec![
            Hat { center: 0.2, half_width: 0.8, coef: C64::new(1.0, 0.3) },
            Hat { center: -0.7, half_width: 0.5, coef: C64::new(-0.4, 0.0) },
        ],
    };
    let grid = StripGrid::for_reproducing(mu);
    for z in [C64::new(0.0, 0.0), C64::new(1.3, 2.0), C64::new(-2.1, -4.5), C64::new(0.4, 6.0), C64::new(3.0, -1.0)] {
        let (r, e) = (reproduce(&f, mu, z, &grid).unwrap(), f.eval(z));
        assert!((r - e).norm() <= 1e-4 * e.norm(), "{z}: {r} vs {e}");
    }
}
