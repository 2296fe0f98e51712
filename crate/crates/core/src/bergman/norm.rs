//! ‖E_{a+ib}z₂ʲz₃ᵏ‖² over 𝒲′_μ: nested closed form plus a θ-quadrature, and a
//! Monte-Carlo oracle sampling the domain directly.

use crate::error::{Error, Result};
use crate::geometry::{Point3, C64};
use crate::kernels::{eval_e, sinh_ratio};
use crate::quadrature::tanh_sinh;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormIntegralSpec {
    pub a: f64,
    pub b: f64,
    pub j: i32,
    pub k: i32,
    pub mu: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormValue {
    Finite(f64),
    Divergent,
}

impl NormValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            NormValue::Finite(v) => Some(v),
            NormValue::Divergent => None,
        }
    }
}

impl std::fmt::Display for NormValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormValue::Finite(v) => write!(f, "{v:.16e}"),
            NormValue::Divergent => write!(f, "DIVERGENT"),
        }
    }
}

/// ∫_{θ/2−μ}^{θ/2+μ} e^{cx}dx.
fn shifted_window(c: f64, mu: f64, theta: f64) -> f64 {
    (0.5 * c * theta).exp() * 2.0 * sinh_ratio(mu, c)
}

/// π²∫_{−π/2}^{π/2} (2cosθ)^{2(a+1)}/(2(a+1)) · I₂(θ)I₃(θ) · e^{−θ(j+k+2)/2} dθ,
/// or Divergent when a ≤ −1.
pub fn norm_integral(s: &NormIntegralSpec) -> Result<NormValue> {
    if !(s.mu > 0.0) || !s.a.is_finite() || !s.b.is_finite() {
        return Err(Error::OutOfRange(format!("bad norm spec {s:?}")));
    }
    if s.a <= -1.0 {
        return Ok(NormValue::Divergent);
    }
    let p = 2.0 * (s.a + 1.0);
    let (c2, c3) = ((s.j + 1) as f64 - 2.0 * s.b, (s.k + 1) as f64 - 2.0 * s.b);
    let shift = -0.5 * (s.j + s.k + 2) as f64;
    let f = |th: f64| {
        let c = (2.0 * th.cos()).max(0.0);
        c.powf(p) * shifted_window(c2, s.mu, th) * shifted_window(c3, s.mu, th) * (shift * th).exp()
    };
    // scale for the absolute tolerance
    let scale = f(0.0).abs().max(f(0.5).abs()).max(f(-0.5).abs()).max(f64::MIN_POSITIVE);
    let (t, _) = tanh_sinh(f, -FRAC_PI_2, FRAC_PI_2, 1e-15 * scale);
    Ok(NormValue::Finite(PI * PI * t / p))
}

/// ∫(2cosθ)^p dθ over (−π/2, π/2) for p = 1, 2, 3, 4.
pub fn cos_power_integral(p: u32) -> Option<f64> {
    match p {
        1 => Some(4.0),
        2 => Some(2.0 * PI),
        3 => Some(32.0 / 3.0),
        4 => Some(6.0 * PI),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

const CHUNK: u64 = 1 << 16;

/// Uniform (log|z₂|², log|z₃|², arg z₂, arg z₃) and z₁ uniform on △(e^{iL}, 1);
/// each chunk draws from its own ChaCha stream, and chunks are merged in order.
pub fn norm_monte_carlo(s: &NormIntegralSpec, samples: u64, seed: u64) -> Result<McEstimate> {
    if !(s.mu > 0.0) || samples == 0 {
        return Err(Error::OutOfRange("need mu > 0 and at least one sample".into()));
    }
    let kappa = C64::new(s.a, s.b);
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<(f64, f64, u64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let n = CHUNK.min(samples - c * CHUNK);
            let (mut sum, mut sq) = (0.0, 0.0);
            for _ in 0..n {
                let t2 = rng.gen_range(-s.mu..s.mu);
                let t3 = rng.gen_range(-s.mu..s.mu);
                let (th2, th3): (f64, f64) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
                let r = rng.gen::<f64>().sqrt();
                let phi = rng.gen_range(0.0..TAU);
                let l = t2 + t3;
                let z1 = C64::from_polar(1.0, l) * (1.0 + C64::from_polar(r, phi));
                let p = Point3::from_polar(z1, t2, th2, t3, th3);
                let v = match eval_e(kappa, &p) {
                    Ok(e) => {
                        // |z₂|^{2j}|z₃|^{2k} times the Jacobian e^{t₂}e^{t₃}/4
                        e.norm_sqr() * ((s.j + 1) as f64 * t2 + (s.k + 1) as f64 * t3).exp() / 4.0
                    }
                    Err(_) => 0.0,
                };
                sum += v;
                sq += v * v;
            }
            (sum, sq, n)
        })
        .collect();
    let (mut sum, mut sq, mut n) = (0.0, 0.0, 0u64);
    for (a, b, m) in parts {
        sum += a;
        sq += b;
        n += m;
    }
    let vol = (2.0 * s.mu).powi(2) * TAU * TAU * PI;
    let mean = sum / n as f64;
    let var = (sq / n as f64 - mean * mean).max(0.0);
    Ok(McEstimate { mean: mean * vol, stderr: (var / n as f64).sqrt() * vol, samples: n })
}

/// Whether |Re(z₁e^{−iL})|^s ∂^m_{z₁}K₋₁,₋₁(·, z′) can be square integrable near
/// z₁ = 0: the radial integral ∫₀ r^{2(ν+s−m)−1}dr converges iff m − s < ν.
pub fn derivative_in_l2(m: u32, s: f64, nu: f64) -> bool {
    (m as f64) - s < nu
}

/// ∫₀^{r_max} r^{2(ν+s−m)−1} dr.
pub fn radial_integral(m: u32, s: f64, nu: f64, r_max: f64) -> NormValue {
    let e = 2.0 * (nu + s - m as f64);
    if e <= 0.0 {
        NormValue::Divergent
    } else {
        NormValue::Finite(r_max.powf(e) / e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: f64, b: f64, j: i32, k: i32, mu: f64) -> NormIntegralSpec {
        NormIntegralSpec { a, b, j, k, mu }
    }

    #[test]
    fn elementary_cases() {
        // b = 0, j = k = −1 reduces to π²(2μ)²∫(2cosθ)^{2(a+1)}/(2(a+1))
        let mu = 1.7;
        for (a, p) in [(-0.5, 1u32), (0.0, 2), (0.5, 3), (1.0, 4)] {
            let v = norm_integral(&spec(a, 0.0, -1, -1, mu)).unwrap().finite().unwrap();
            let exact = PI * PI * 4.0 * mu * mu * cos_power_integral(p).unwrap() / p as f64;
            assert!((v - exact).abs() < 1e-12 * exact, "a={a}: {v} vs {exact}");
        }
    }

    #[test]
    fn divergence_and_blow_up() {
        assert_eq!(norm_integral(&spec(-1.0, 0.3, 2, 0, 2.0)).unwrap(), NormValue::Divergent);
        let vals: Vec<f64> = (1..=12)
            .map(|m| norm_integral(&spec(-1.0 + 0.5f64.powi(m), 0.0, -1, -1, PI)).unwrap().finite().unwrap())
            .collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]));
        assert!(vals[11] / vals[0] >= 100.0);
    }

    #[test]
    fn swap_symmetry() {
        let a = norm_integral(&spec(0.3, 0.2, 1, -2, 2.5)).unwrap().finite().unwrap();
        let b = norm_integral(&spec(0.3, 0.2, -2, 1, 2.5)).unwrap().finite().unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn monte_carlo_agrees_off_the_trivial_case() {
        let s = spec(0.5, 0.2, 1, -2, 1.5);
        let v = norm_integral(&s).unwrap().finite().unwrap();
        let mc = norm_monte_carlo(&s, 400_000, 11).unwrap();
        assert!((mc.mean - v).abs() <= 4.0 * mc.stderr, "{} ± {} vs {v}", mc.mean, mc.stderr);
        assert_eq!(norm_monte_carlo(&s, 1000, 3).unwrap(), norm_monte_carlo(&s, 1000, 3).unwrap());
    }

    #[test]
    fn exponent_classifier() {
        let nu = 0.5;
        assert!(derivative_in_l2(0, 0.0, nu));
        assert!(!derivative_in_l2(1, 0.5, nu));
        assert!(derivative_in_l2(1, 0.6, nu));
        assert_eq!(radial_integral(1, 0.5, nu, 1.0), NormValue::Divergent);
        assert_eq!(radial_integral(1, 0.75, nu, 1.0), NormValue::Finite(2.0));
    }
}
