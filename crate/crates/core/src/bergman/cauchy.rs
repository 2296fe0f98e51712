//! The iterated Cauchy integral F_a over 𝒜_a × 𝒜_a and the extension report.

use crate::error::{Error, Result};
use crate::geometry::{DomainParams, MuBound, Point3, C64, I};
use crate::kernels::eval_e;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

pub const DEFAULT_CONTOUR_NODES: usize = 512;
pub const CLEARANCE: f64 = 0.05;

/// The annulus A(0, e^{a/2}, e^{a/2+π}) with n trapezoid nodes per circle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnnulusContour {
    pub a: f64,
    pub nodes: usize,
}

impl AnnulusContour {
    pub fn new(a: f64, nodes: usize) -> Result<Self> {
        if !a.is_finite() || nodes < 4 {
            return Err(Error::OutOfRange(format!("contour a = {a}, nodes = {nodes}")));
        }
        Ok(Self { a, nodes })
    }

    pub fn inner_radius(&self) -> f64 {
        (0.5 * self.a).exp()
    }

    pub fn outer_radius(&self) -> f64 {
        (0.5 * self.a + PI).exp()
    }

    fn check(&self, z: C64) -> Result<()> {
        let r = z.norm();
        for radius in [self.inner_radius(), self.outer_radius()] {
            let clearance = (r - radius).abs();
            if clearance < CLEARANCE * radius {
                return Err(Error::TooCloseToContour { clearance, radius });
            }
        }
        if r <= self.inner_radius() || r >= self.outer_radius() {
            return Err(Error::OutOfRange(format!("|z| = {r} is outside the annulus")));
        }
        Ok(())
    }

    /// (ζ, sign·ζ/(ζ − z)/n) over both circles; outer +, inner −.
    fn weights(&self, z: C64) -> Vec<(C64, C64)> {
        let n = self.nodes;
        [(self.outer_radius(), 1.0), (self.inner_radius(), -1.0)]
            .iter()
            .flat_map(|&(r, sign)| {
                (0..n).map(move |m| {
                    let zeta = C64::from_polar(r, TAU * m as f64 / n as f64);
                    (zeta, sign * zeta / (zeta - z) / n as f64)
                })
            })
            .collect()
    }
}

/// F_a(p) = (2πi)⁻²∬ f(z₁,ζ₂,ζ₃)/((ζ₂−z₂)(ζ₃−z₃)) dζ₂dζ₃ over ∂𝒜_a × ∂𝒜_a.
pub fn cauchy_extend<F>(f: &F, contour: &AnnulusContour, p: &Point3) -> Result<C64>
where
    F: Fn(C64, C64, C64) -> C64 + Sync,
{
    contour.check(p.z2)?;
    contour.check(p.z3)?;
    let w2 = contour.weights(p.z2);
    let w3 = contour.weights(p.z3);
    let rows: Vec<C64> = w2
        .par_iter()
        .map(|&(z2, c2)| w3.iter().map(|&(z3, c3)| f(p.z1, z2, z3) * c3).sum::<C64>() * c2)
        .collect();
    Ok(rows.iter().sum())
}

/// Membership in 𝒲̂′: |z₁ − e^{2ia}| < 1 and a < log|z_j|² < a + 2π.
pub fn in_extension_region(p: &Point3, a: f64) -> bool {
    let band = |t: f64| t > a && t < a + TAU;
    (p.z1 - (2.0 * I * a).exp()).norm() < 1.0 && band(p.t2()) && band(p.t3())
}

/// Membership in 𝒲′_μ: |z₁ − e^{iL}| < 1 and |log|z_j|²| < μ.
pub fn in_w_prime(p: &Point3, mu: f64) -> bool {
    let (t2, t3) = (p.t2(), p.t3());
    (p.z1 - (I * (t2 + t3)).exp()).norm() < 1.0 && t2.abs() < mu && t3.abs() < mu
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionRow {
    pub label: String,
    /// "laurent" or "e_kappa"
    pub family: String,
    pub expect_extends: bool,
    pub f_re: f64,
    pub f_im: f64,
    pub ext_re: f64,
    pub ext_im: f64,
    pub rel_mismatch: f64,
    pub doubling_change: f64,
    /// "pass" when F_a reproduces f to the tolerance, else "fail"
    pub verdict: String,
    pub as_expected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRow {
    pub label: String,
    pub ext_re: f64,
    pub ext_im: f64,
    pub rel_mismatch: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NebenhulleReport {
    pub mu: f64,
    pub a: f64,
    pub a_range: (f64, f64),
    pub nodes: usize,
    pub tolerance: f64,
    pub fail_threshold: f64,
    pub point: [(f64, f64); 3],
    pub witness_point: [(f64, f64); 3],
    pub witness_in_w_prime: bool,
    pub witness_in_extension_region: bool,
    pub rows: Vec<ExtensionRow>,
    pub witness: Vec<WitnessRow>,
    pub all_as_expected: bool,
}

/// (label, j, k, m) for z₁ᵐz₂ʲz₃ᵏ.
pub const LAURENT_PANEL: [(i32, i32, i32); 10] = [
    (0, 0, 1),
    (1, 0, 0),
    (0, 1, 0),
    (-1, 0, 0),
    (0, -2, 0),
    (3, -2, 1),
    (-1, -1, 1),
    (2, 5, 0),
    (-4, 3, 2),
    (1, -3, 3),
];

pub const KAPPAS: [(f64, f64); 3] = [(0.5, 0.0), (-1.0 / 3.0, 0.0), (0.0, 1.0)];

fn laurent(m: i32, j: i32, k: i32) -> impl Fn(C64, C64, C64) -> C64 + Sync {
    move |z1: C64, z2: C64, z3: C64| z1.powi(m) * z2.powi(j) * z3.powi(k)
}

fn e_kappa(kappa: C64) -> impl Fn(C64, C64, C64) -> C64 + Sync {
    move |z1, z2, z3| eval_e(kappa, &Point3 { z1, z2, z3 }).unwrap_or(C64::new(f64::NAN, f64::NAN))
}

type BoxedFn = Box<dyn Fn(C64, C64, C64) -> C64 + Sync>;

fn pair(z: C64) -> (f64, f64) {
    (z.re, z.im)
}

/// Runs F_a on the Laurent panel, the constant 1 and E_κ for the three
/// non-integer κ at p = (e^{2ia}, e^{a/2+π/2}, e^{a/2+π/2}e^{iπ/4}) with a the midpoint
/// of (−μ/2, μ/2 − 2π).
pub fn nebenhulle_report(mu: f64, nodes: usize) -> Result<NebenhulleReport> {
    DomainParams::new(mu, mu + 1.0, MuBound::Nebenhulle)?;
    let a_range = (-0.5 * mu, 0.5 * mu - TAU);
    let a = 0.5 * (a_range.0 + a_range.1);
    let contour = AnnulusContour::new(a, nodes)?;
    let fine = AnnulusContour::new(a, 2 * nodes)?;
    let r = (0.5 * a + FRAC_PI_2).exp();
    let p = Point3::new((2.0 * I * a).exp(), C64::new(r, 0.0), C64::from_polar(r, FRAC_PI_4))?;
    // same z₁, but |z₂|²|z₃|² = e^{2a+π}, so z₁ sits at distance 2 from e^{iL}
    let rw = (0.5 * a + 0.25 * PI).exp();
    let witness_p = Point3::new(p.z1, C64::new(rw, 0.0), C64::from_polar(rw, FRAC_PI_4))?;
    let tolerance = 1e-9;
    let fail_threshold = 1e-3;

    let mut funcs: Vec<(String, String, bool, BoxedFn)> = LAURENT_PANEL
        .iter()
        .map(|&(j, k, m)| {
            let f: BoxedFn = Box::new(laurent(m, j, k));
            (format!("z1^{m} z2^{j} z3^{k}"), "laurent".to_string(), true, f)
        })
        .collect();
    funcs.push(("1".into(), "laurent".into(), true, Box::new(|_, _, _| C64::new(1.0, 0.0))));
    for (re, im) in KAPPAS {
        funcs.push((format!("E({re:.6}{im:+.6}i)"), "e_kappa".into(), false, Box::new(e_kappa(C64::new(re, im)))));
    }

    let mut rows = Vec::new();
    let mut witness = Vec::new();
    for (label, family, expect, f) in &funcs {
        let fp = f(p.z1, p.z2, p.z3);
        let ext = cauchy_extend(f, &contour, &p)?;
        let ext2 = cauchy_extend(f, &fine, &p)?;
        let scale = fp.norm().max(f64::MIN_POSITIVE);
        let rel = (ext - fp).norm() / scale;
        let pass = rel <= tolerance;
        let as_expected = if *expect { pass } else { rel > fail_threshold };
        rows.push(ExtensionRow {
            label: label.clone(),
            family: family.clone(),
            expect_extends: *expect,
            f_re: fp.re,
            f_im: fp.im,
            ext_re: ext.re,
            ext_im: ext.im,
            rel_mismatch: rel,
            doubling_change: (ext2 - ext).norm() / scale,
            verdict: if pass { "pass" } else { "fail" }.into(),
            as_expected,
        });
        if *expect {
            let v = cauchy_extend(f, &contour, &witness_p)?;
            let fw = f(witness_p.z1, witness_p.z2, witness_p.z3);
            witness.push(WitnessRow {
                label: label.clone(),
                ext_re: v.re,
                ext_im: v.im,
                rel_mismatch: (v - fw).norm() / fw.norm().max(f64::MIN_POSITIVE),
            });
        }
    }
    let all_as_expected = rows.iter().all(|r| r.as_expected);
    Ok(NebenhulleReport {
        mu,
        a,
        a_range,
        nodes,
        tolerance,
        fail_threshold,
        point: [pair(p.z1), pair(p.z2), pair(p.z3)],
        witness_point: [pair(witness_p.z1), pair(witness_p.z2), pair(witness_p.z3)],
        witness_in_w_prime: in_w_prime(&witness_p, mu),
        witness_in_extension_region: in_extension_region(&witness_p, a),
        rows,
        witness,
        all_as_expected,
    })
}
