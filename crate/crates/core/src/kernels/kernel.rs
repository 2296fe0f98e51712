//! K_{ω₋₁,₋₁}(ζ, ζ′) = ∫ ξ³e^{idξ} / (2π³ sinh²(2μξ) sinh(πξ)) dξ with d = ζ − ζ̄′,
//! its leading residue term, and the wound kernel on D_μ.

use super::unwind::{ell, eval_e, in_d_mu};
use crate::error::{Error, Result};
use crate::geometry::{nu, nu_prime, Point3, C64, I};
use crate::quadrature::{circle_mean, series_eval, series_inv, series_mul, sinhc_series};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

/// Below this |ξ| the even factor ξ³/(sinh²(2μξ)sinh(πξ)) comes from its Taylor series.
const SERIES_RADIUS: f64 = 1e-2;
/// Asymptotics are attached to a KernelEval only when |Re d| is at least this.
pub const WALL_THRESHOLD: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsympConstants {
    pub nu: f64,
    pub nu_prime: f64,
    pub c_nu: C64,
    pub c_nu_prime: C64,
}

impl AsympConstants {
    pub fn new(mu: f64) -> Result<Self> {
        if !(mu > FRAC_PI_2) {
            return Err(Error::OutOfRange(format!("asymptotics need mu > pi/2, got {mu}")));
        }
        let v = nu(mu);
        let s = (v * PI).sin();
        let p5 = 2.0 * PI.powi(5);
        Ok(Self {
            nu: v,
            nu_prime: nu_prime(mu),
            c_nu: -I * v.powi(5) / (p5 * s),
            c_nu_prime: I * v.powi(4) * (3.0 - v * PI / (v * PI).tan()) / (p5 * s),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelSettings {
    /// Step halving stops once successive sums differ by less than this, relative.
    pub rel_tol: f64,
    /// The analytic tail beyond the truncation point stays below this times |K|.
    pub tail_tol: f64,
    pub h0: f64,
    pub max_halvings: u32,
}

impl Default for KernelSettings {
    fn default() -> Self {
        Self { rel_tol: 1e-10, tail_tol: 1e-12, h0: 0.25, max_halvings: 16 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: C64,
    pub error_estimate: f64,
    pub xi_max: f64,
    pub step: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelEval {
    pub zeta: C64,
    pub zeta_prime: C64,
    pub value: C64,
    pub quad_error_estimate: f64,
    pub asymp_value: Option<C64>,
    pub asymp_residual: Option<f64>,
}

/// The even factor r(ξ) = ξ³/(sinh²(2μξ)sinh(πξ)): a series in ξ² near 0,
/// an expm1 form elsewhere.
#[derive(Clone, Debug)]
pub struct EvenFactor {
    mu: f64,
    series: Vec<f64>,
}

impl EvenFactor {
    pub fn new(mu: f64) -> Self {
        let a = sinhc_series(2.0 * mu, 7);
        let b = sinhc_series(PI, 7);
        let inv = series_inv(&series_mul(&series_mul(&a, &a), &b));
        let lead = 1.0 / (4.0 * mu * mu * PI);
        Self { mu, series: inv.iter().map(|c| c * lead).collect() }
    }

    /// r(ξ) = pre·e^{expo}, kept apart so large |ξ| never overflows.
    fn split(&self, xi: f64) -> (f64, f64) {
        let x = xi.abs();
        let m = 4.0 * self.mu + PI;
        if x < SERIES_RADIUS {
            (series_eval(&self.series, x * x), 0.0)
        } else {
            let a = -(-4.0 * self.mu * x).exp_m1();
            let b = -(-2.0 * PI * x).exp_m1();
            (8.0 * x * x * x / (a * a * b), -m * x)
        }
    }

    pub fn value(&self, xi: f64) -> f64 {
        let (p, e) = self.split(xi);
        p * e.exp()
    }

    /// r(ξ)(e^{idξ} + e^{−idξ}) for ξ > 0.
    fn pair(&self, xi: f64, d: C64) -> C64 {
        let (p, e) = self.split(xi);
        let ph = I * d * xi;
        ((ph + e).exp() + (-ph + e).exp()) * p
    }
}

/// A fixed-step trapezoid sum for K(d) at many d sharing a bound on |Im d|.
#[derive(Clone, Debug)]
pub struct KernelSum {
    step: f64,
    // (ξ_n, prefactor, −(4μ+π)ξ_n)
    nodes: Vec<(f64, f64, f64)>,
    centre: f64,
}

impl KernelSum {
    /// Step and window chosen for |Im d| ≤ im_max; the tail is below e^{−40}.
    pub fn new(mu: f64, im_max: f64) -> Result<Self> {
        let margin = 4.0 * mu + PI - im_max.abs();
        if margin < 1e-3 {
            return Err(Error::NonConvergent(format!("decay margin {margin:.3e} below 1e-3")));
        }
        let f = EvenFactor::new(mu);
        let step = 0.02f64.min(PI * nu(mu) / 40.0);
        let n = ((40.0 / margin).max(1.0) / step).ceil() as usize;
        let nodes = (1..=n)
            .map(|m| {
                let x = m as f64 * step;
                let (p, e) = f.split(x);
                (x, p, e)
            })
            .collect();
        Ok(Self { step, nodes, centre: f.value(0.0) })
    }

    pub fn eval(&self, d: C64) -> C64 {
        let c = self.step / (2.0 * PI.powi(3));
        let rot = (I * d.re * self.step).exp();
        let mut z = C64::new(1.0, 0.0);
        let mut s = C64::new(self.centre, 0.0);
        for &(x, p, e) in &self.nodes {
            z *= rot;
            let up = p * (e - d.im * x).exp();
            let down = p * (e + d.im * x).exp();
            s += z * up + z.conj() * down;
        }
        s * c
    }
}

/// 𝓘(ξ) at complex ξ, by the direct formula.
pub fn integrand(mu: f64, d: C64, xi: C64) -> C64 {
    let s2 = (2.0 * mu * xi).sinh();
    xi * xi * xi * (I * d * xi).exp() / (2.0 * PI.powi(3) * s2 * s2 * (PI * xi).sinh())
}

fn trapezoid(f: &EvenFactor, d: C64, h: f64, xi_max: f64) -> (C64, f64) {
    let n = (xi_max / h).ceil() as usize;
    let mut s = C64::new(f.value(0.0), 0.0);
    let mut abs = s.norm();
    for m in 1..=n {
        let v = f.pair(m as f64 * h, d);
        abs += v.norm();
        s += v;
    }
    let c = h / (2.0 * PI.powi(3));
    (s * c, abs * c)
}

/// Bound on ∫_{|ξ|>Ξ}|𝓘| from |𝓘(ξ)| ≤ C|ξ|³e^{−m|ξ|}, m = 4μ+π−|Im d|, Ξ ≥ 1.
fn tail_bound(mu: f64, margin: f64, xi_max: f64) -> f64 {
    let c = 8.0 / (2.0 * PI.powi(3) * (-(-4.0 * mu).exp_m1()).powi(2) * (-(-2.0 * PI).exp_m1()));
    let (x, m) = (xi_max.max(1.0), margin);
    2.0 * c * (-m * x).exp() * (x.powi(3) / m + 3.0 * x * x / (m * m) + 6.0 * x / m.powi(3) + 6.0 / m.powi(4))
}

/// Truncated trapezoid with step halving, as a function of d = ζ − ζ̄′.
pub fn kernel_quadrature_d(mu: f64, d: C64, s: &KernelSettings) -> Result<Quadrature> {
    if !(mu > 0.0) {
        return Err(Error::OutOfRange(format!("mu must be positive, got {mu}")));
    }
    let margin = 4.0 * mu + PI - d.im.abs();
    if margin < 1e-3 {
        return Err(Error::NonConvergent(format!("decay margin {margin:.3e} below 1e-3")));
    }
    let f = EvenFactor::new(mu);
    let mut xi_max = (30.0 / margin).max(1.0);
    let mut h = s.h0.min(xi_max / 8.0);
    let (mut prev, _) = trapezoid(&f, d, h, xi_max);
    for _ in 0..s.max_halvings {
        h *= 0.5;
        let (cur, abs) = trapezoid(&f, d, h, xi_max);
        // widen the window until the tail is negligible against the current value
        let target = s.tail_tol * cur.norm().max(f64::MIN_POSITIVE);
        if tail_bound(mu, margin, xi_max) > target {
            while tail_bound(mu, margin, xi_max) > target && xi_max < 1e4 {
                xi_max *= 1.25;
            }
            prev = trapezoid(&f, d, 2.0 * h, xi_max).0;
            h *= 2.0;
            continue;
        }
        let diff = (cur - prev).norm();
        let floor = 64.0 * f64::EPSILON * abs;
        if diff <= s.rel_tol * cur.norm() || diff <= floor {
            return Ok(Quadrature {
                value: cur,
                error_estimate: diff + tail_bound(mu, margin, xi_max),
                xi_max,
                step: h,
            });
        }
        prev = cur;
    }
    Err(Error::NonConvergent(format!("step halving did not settle for d = {d}")))
}

fn check_strip(mu: f64, z: C64) -> Result<()> {
    let beta = 2.0 * mu + FRAC_PI_2;
    if !(z.im.abs() < beta) {
        return Err(Error::OutOfRange(format!("{z} is outside the strip |Im| < {beta}")));
    }
    Ok(())
}

pub fn kernel_quadrature(mu: f64, zeta: C64, zeta_prime: C64) -> Result<KernelEval> {
    kernel_quadrature_with(mu, zeta, zeta_prime, &KernelSettings::default())
}

pub fn kernel_quadrature_with(mu: f64, zeta: C64, zeta_prime: C64, s: &KernelSettings) -> Result<KernelEval> {
    check_strip(mu, zeta)?;
    check_strip(mu, zeta_prime)?;
    let d = zeta - zeta_prime.conj();
    let q = kernel_quadrature_d(mu, d, s)?;
    let asymp_value = if d.re.abs() >= WALL_THRESHOLD && mu > FRAC_PI_2 { Some(asymptotic_d(mu, d)?) } else { None };
    Ok(KernelEval {
        zeta,
        zeta_prime,
        value: q.value,
        quad_error_estimate: q.error_estimate,
        asymp_value,
        asymp_residual: asymp_value.map(|a| (a - q.value).norm()),
    })
}

/// e^{∓dν}(C_ν d ± C′_ν), the residue of 𝓘 at ±iν.
pub fn residue_formula(mu: f64, d: C64, upper: bool) -> Result<C64> {
    let c = AsympConstants::new(mu)?;
    Ok(if upper {
        (-d * c.nu).exp() * (c.c_nu * d + c.c_nu_prime)
    } else {
        (d * c.nu).exp() * (c.c_nu * d - c.c_nu_prime)
    })
}

/// (1/2πi)∮𝓘 over the circle of the given radius about ±iν, n-node trapezoid.
pub fn residue_contour(mu: f64, d: C64, upper: bool, radius: f64, n: usize) -> C64 {
    let p0 = if upper { I * nu(mu) } else { -I * nu(mu) };
    circle_mean(p0, radius, n, |xi| integrand(mu, d, xi) * (xi - p0))
}

/// Leading term of K for Re d ≠ 0: 2πi·Res(𝓘, iν) for Re d > 0 and
/// −2πi·Res(𝓘, −iν) for Re d < 0.
pub fn asymptotic_d(mu: f64, d: C64) -> Result<C64> {
    if d.re == 0.0 {
        return Err(Error::OnWall);
    }
    let upper = d.re > 0.0;
    let r = residue_formula(mu, d, upper)?;
    Ok(if upper { 2.0 * PI * I * r } else { -2.0 * PI * I * r })
}

pub fn kernel_asymptotic(mu: f64, zeta: C64, zeta_prime: C64) -> Result<C64> {
    asymptotic_d(mu, zeta - zeta_prime.conj())
}

fn check_d_mu(mu: f64, p: &Point3) -> Result<()> {
    if !in_d_mu(p, mu) {
        return Err(Error::OutOfRange(format!("point {p:?} is not in D_mu")));
    }
    Ok(())
}

/// K_{−1,−1}(z, z′) = K_ω(ℓ(z), ℓ(z′))(z₁z̄₁′)⁻¹(z₂z̄₂′)⁻¹(z₃z̄₃′)⁻¹ on D_μ.
pub fn wound_kernel(mu: f64, p: &Point3, q: &Point3) -> Result<C64> {
    check_d_mu(mu, p)?;
    check_d_mu(mu, q)?;
    let (l, lq) = (ell(p)?, ell(q)?);
    let k = kernel_quadrature_d(mu, l - lq.conj(), &KernelSettings::default())?.value;
    Ok(k / (p.z1 * q.z1.conj() * p.z2 * q.z2.conj() * p.z3 * q.z3.conj()))
}

/// Leading term of the wound kernel for |z₁| ≠ |z₁′|.
pub fn wound_asymptotic(mu: f64, p: &Point3, q: &Point3) -> Result<C64> {
    check_d_mu(mu, p)?;
    check_d_mu(mu, q)?;
    let c = AsympConstants::new(mu)?;
    let d = ell(p)? - ell(q)?.conj();
    let v = C64::new(c.nu, 0.0);
    let lead = if d.re > 0.0 {
        2.0 * PI * I * eval_e(-v - 1.0, p)? * eval_e(v - 1.0, q)?.conj() * (c.c_nu * d + c.c_nu_prime)
    } else if d.re < 0.0 {
        -2.0 * PI * I * eval_e(v - 1.0, p)? * eval_e(-v - 1.0, q)?.conj() * (c.c_nu * d - c.c_nu_prime)
    } else {
        return Err(Error::OnWall);
    };
    Ok(lead / (p.z2 * q.z2.conj() * p.z3 * q.z3.conj()))
}

/// Both sides of E_{iξ−1}(z)·conj(E_{iξ−1}(z′)) = e^{i(ℓ(z)−conj ℓ(z′))ξ}(z₁z̄₁′)⁻¹.
pub fn wound_integrand_sides(p: &Point3, q: &Point3, xi: f64) -> Result<(C64, C64)> {
    let k = C64::new(-1.0, xi);
    let lhs = eval_e(k, p)? * eval_e(k, q)?.conj();
    let rhs = (I * (ell(p)? - ell(q)?.conj()) * xi).exp() / (p.z1 * q.z1.conj());
    Ok((lhs, rhs))
}
