//! Test functions F(ζ) = (1/2π)∫φ(ξ)e^{iζξ}dξ with φ a combination of hats,
//! their norms on both sides of the Fourier isometry, and the reproducing check.

use super::kernel::KernelSum;
use super::weight::StripWeight;
use crate::error::{Error, Result};
use crate::geometry::{C64, I};
use crate::quadrature::Panels;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// coef·max(0, 1 − |ξ − center|/half_width)
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hat {
    pub center: f64,
    pub half_width: f64,
    pub coef: C64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub hats: Vec<Hat>,
}

/// (sin z / z)², continuous at 0.
fn sinc2(z: C64) -> C64 {
    if z.norm() < 1e-4 {
        let s = 1.0 - z * z / 6.0;
        s * s
    } else {
        let s = z.sin() / z;
        s * s
    }
}

impl SpectralProfile {
    pub fn single(center: f64, half_width: f64) -> Self {
        Self { hats: vec![Hat { center, half_width, coef: C64::new(1.0, 0.0) }] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.hats.is_empty() || self.hats.iter().any(|h| !(h.half_width > 0.0) || !h.center.is_finite()) {
            return Err(Error::OutOfRange("hats need positive half-widths".into()));
        }
        Ok(())
    }

    pub fn phi(&self, xi: f64) -> C64 {
        self.hats
            .iter()
            .map(|h| h.coef * (1.0 - (xi - h.center).abs() / h.half_width).max(0.0))
            .sum()
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> =
            self.hats.iter().flat_map(|h| [h.center - h.half_width, h.center, h.center + h.half_width]).collect();
        b.sort_by(|x, y| x.total_cmp(y));
        b.dedup();
        b
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { hats: self.hats.iter().map(|h| Hat { coef: h.coef * s, ..*h }).collect() }
    }

    /// F(ζ), in closed form: each hat contributes e^{iζc}·w·sinc²(ζw/2)/2π.
    pub fn eval(&self, zeta: C64) -> C64 {
        self.hats
            .iter()
            .map(|h| h.coef * (I * zeta * h.center).exp() * h.half_width * sinc2(zeta * (0.5 * h.half_width)))
            .sum::<C64>()
            / (2.0 * PI)
    }
}

/// (1/2π)∫|φ|²α̃.
pub fn spectral_norm_sq(f: &SpectralProfile, w: &StripWeight) -> f64 {
    let gl = Panels::new(32);
    gl.integrate_breaks(&f.breakpoints(), 4, |xi| f.phi(xi).norm_sqr() * w.spectral(xi)) / (2.0 * PI)
}

/// Grid for integrals over the strip: trapezoid in x on [−x_max, x_max],
/// Gauss–Legendre in y on each smooth piece of ω.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StripGrid {
    pub x_max: f64,
    pub x_step: f64,
    pub y_order: usize,
    pub y_sub: usize,
}

impl StripGrid {
    /// |F|² decays like x⁻⁴; the window leaves a tail below 1e−9 relative.
    pub fn for_norms() -> Self {
        Self { x_max: 4000.0, x_step: 0.25, y_order: 24, y_sub: 4 }
    }

    /// F·K̄ decays like e^{−ν|x|}.
    pub fn for_reproducing(mu: f64) -> Self {
        Self { x_max: 50.0 / crate::geometry::nu(mu), x_step: 0.25, y_order: 16, y_sub: 2 }
    }

    fn y_nodes(&self, w: &StripWeight) -> Vec<(f64, f64)> {
        let gl = Panels::new(self.y_order);
        let b = w.breakpoints();
        let mut out = Vec::new();
        for seg in b.windows(2) {
            let step = (seg[1] - seg[0]) / self.y_sub as f64;
            for i in 0..self.y_sub {
                let a = seg[0] + step * i as f64;
                out.extend(gl.nodes(a, a + step).map(|(y, wy)| (y, wy * w.spatial(y))));
            }
        }
        out
    }

    fn x_nodes(&self) -> Vec<f64> {
        let n = (self.x_max / self.x_step).round() as i64;
        (-n..=n).map(|m| m as f64 * self.x_step).collect()
    }
}

/// ∬|F(x+iy)|²ω(y)dx dy.
pub fn spatial_norm_sq(f: &SpectralProfile, w: &StripWeight, grid: &StripGrid) -> f64 {
    let xs = grid.x_nodes();
    grid.y_nodes(w)
        .par_iter()
        .map(|&(y, wy)| wy * grid.x_step * xs.iter().map(|&x| f.eval(C64::new(x, y)).norm_sqr()).sum::<f64>())
        .sum()
}

/// ⟨F, K(·, ζ)⟩ in A²(S_β, ω₋₁,₋₁), which should return F(ζ).
pub fn reproduce(f: &SpectralProfile, mu: f64, zeta: C64, grid: &StripGrid) -> Result<C64> {
    let w = StripWeight::new(mu, -1, -1)?;
    if !(zeta.im.abs() < w.beta()) {
        return Err(Error::OutOfRange(format!("{zeta} is outside the strip")));
    }
    let ks = KernelSum::new(mu, w.beta() + zeta.im.abs())?;
    let xs = grid.x_nodes();
    let total: C64 = grid
        .y_nodes(&w)
        .par_iter()
        .map(|&(y, wy)| {
            let row: C64 = xs
                .iter()
                .map(|&x| {
                    let z = C64::new(x, y);
                    f.eval(z) * ks.eval(z - zeta.conj()).conj()
                })
                .sum();
            row * (wy * grid.x_step)
        })
        .sum();
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub label: String,
    pub norm_sq_spectral: f64,
    pub norm_sq_spectral_wider: f64,
    pub norm_sq_spatial: f64,
    pub rel_diff: f64,
    /// ‖2F‖/‖F‖, which should be 2.
    pub doubling_ratio: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub mu: f64,
    pub mu_prime: f64,
    pub j: i32,
    pub k: i32,
    pub rows: Vec<DensityRow>,
    pub pass: bool,
}

/// For each compactly supported φ, the element F lies in both A²(S_β′, ω^{μ′})
/// and A²(S_β, ω^μ); its norm on S_β is computed on both sides of the isometry.
pub fn restriction_density_check(
    mu: f64,
    mu_prime: f64,
    j: i32,
    k: i32,
    profiles: &[(String, SpectralProfile)],
) -> Result<DensityReport> {
    if !(mu > 0.0 && mu_prime > mu) {
        return Err(Error::OutOfRange(format!("need 0 < mu < mu_prime, got {mu}, {mu_prime}")));
    }
    let (w, wp) = (StripWeight::new(mu, j, k)?, StripWeight::new(mu_prime, j, k)?);
    let grid = StripGrid::for_norms();
    let mut rows = Vec::new();
    for (label, f) in profiles {
        f.validate()?;
        let s = spectral_norm_sq(f, &w);
        let sw = spectral_norm_sq(f, &wp);
        let sp = spatial_norm_sq(f, &w, &grid);
        let rel = (sp - s).abs() / s;
        let ratio = (spectral_norm_sq(&f.scaled(2.0), &w) / s).sqrt();
        let pass = rel <= 1e-4 && sw.is_finite() && s.is_finite() && (ratio - 2.0).abs() <= 1e-7;
        rows.push(DensityRow {
            label: label.clone(),
            norm_sq_spectral: s,
            norm_sq_spectral_wider: sw,
            norm_sq_spatial: sp,
            rel_diff: rel,
            doubling_ratio: ratio,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(DensityReport { mu, mu_prime, j, k, rows, pass })
}
