//! Points of ℂ × ℂ* × ℂ*, the defining function ρ and boundary sampling.

use crate::error::{Error, Result};
use crate::profiles::{EtaProfile, TBox};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

pub type C64 = Complex64;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Tolerance on |ρ| for a point to count as a boundary point.
pub const BOUNDARY_TOL: f64 = 1e-10;
/// Below this distance z₁ is identified with e^{iL} when choosing a frame.
pub const ARC_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Point3 {
    pub z1: C64,
    pub z2: C64,
    pub z3: C64,
}

impl Point3 {
    pub fn new(z1: C64, z2: C64, z3: C64) -> Result<Self> {
        let finite = [z1, z2, z3].iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::InvalidPoint("non-finite coordinate".into()));
        }
        if z2 == C64::new(0.0, 0.0) || z3 == C64::new(0.0, 0.0) {
            return Err(Error::InvalidPoint("z2 z3 must be nonzero".into()));
        }
        Ok(Self { z1, z2, z3 })
    }

    /// Point with |z_j|² = e^{t_j} and arg z_j = θ_j.
    pub fn from_polar(z1: C64, t2: f64, th2: f64, t3: f64, th3: f64) -> Self {
        Self {
            z1,
            z2: C64::from_polar((0.5 * t2).exp(), th2),
            z3: C64::from_polar((0.5 * t3).exp(), th3),
        }
    }

    pub fn t2(&self) -> f64 {
        self.z2.norm_sqr().ln()
    }

    pub fn t3(&self) -> f64 {
        self.z3.norm_sqr().ln()
    }

    /// L = log|z₂z₃|².
    pub fn log_mod(&self) -> f64 {
        self.t2() + self.t3()
    }

    pub fn as_array(&self) -> [C64; 3] {
        [self.z1, self.z2, self.z3]
    }
}

/// Which consumer a lower bound on μ is checked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuBound {
    /// Profile constructions: μ > π.
    Profile,
    /// Model kernels and norms: μ > π/2.
    Kernel,
    /// Cauchy extension demo: μ > 4π.
    Nebenhulle,
}

impl MuBound {
    pub fn floor(self) -> f64 {
        match self {
            MuBound::Profile => PI,
            MuBound::Kernel => FRAC_PI_2,
            MuBound::Nebenhulle => 4.0 * PI,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DomainParams {
    pub mu: f64,
    pub mu_prime: f64,
}

impl DomainParams {
    pub fn new(mu: f64, mu_prime: f64, bound: MuBound) -> Result<Self> {
        if !(mu > bound.floor() && mu.is_finite()) {
            return Err(Error::OutOfRange(format!(
                "mu = {mu} must exceed {:.6} for this use",
                bound.floor()
            )));
        }
        if !(mu_prime > mu && mu_prime.is_finite()) {
            return Err(Error::OutOfRange(format!("need mu_prime > mu, got {mu_prime}")));
        }
        Ok(Self { mu, mu_prime })
    }

    /// ν = π/(2μ).
    pub fn nu(&self) -> f64 {
        nu(self.mu)
    }

    /// ν′ = min(2ν, 1).
    pub fn nu_prime(&self) -> f64 {
        nu_prime(self.mu)
    }
}

pub fn nu(mu: f64) -> f64 {
    PI / (2.0 * mu)
}

pub fn nu_prime(mu: f64) -> f64 {
    (2.0 * nu(mu)).min(1.0)
}

/// ρ = |z₁|² − 2 Re(z₁ e^{−iL}) + η(log|z₂|², log|z₃|²).
pub fn eval_rho(p: &Point3, eta: &dyn EtaProfile) -> f64 {
    let l = p.log_mod();
    let q = p.z1 * C64::from_polar(1.0, -l);
    p.z1.norm_sqr() - 2.0 * q.re + eta.value(p.t2(), p.t3())
}

pub fn contains(p: &Point3, eta: &dyn EtaProfile) -> bool {
    eval_rho(p, eta) < 0.0
}

/// The (1,0)-gradient (∂ρ/∂z₁, ∂ρ/∂z₂, ∂ρ/∂z₃).
pub fn drho(p: &Point3, eta: &dyn EtaProfile) -> [C64; 3] {
    let l = p.log_mod();
    let q = p.z1 * C64::from_polar(1.0, -l);
    let j = eta.jet(p.t2(), p.t3());
    [
        p.z1.conj() - C64::from_polar(1.0, -l),
        C64::from(-2.0 * q.im + j.d2) / p.z2,
        C64::from(-2.0 * q.im + j.d3) / p.z3,
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Annulus {
    pub k: i64,
    pub r_minus: f64,
    pub r_plus: f64,
}

/// For fixed z₁ = ρ₀e^{iθ₀} with 0 < ρ₀ < 2, the radii r_k^± such that
/// |z₁ − e^{iL}| < 1 exactly when r_k^− < |z₂z₃| < r_k^+ for some k.
pub fn fiber_annuli(z1: C64, ks: std::ops::RangeInclusive<i64>) -> Result<Vec<Annulus>> {
    let r0 = z1.norm();
    if !(r0 > 0.0 && r0 < 2.0) {
        return Err(Error::OutOfRange(format!("|z1| = {r0} must lie in (0, 2)")));
    }
    let th0 = z1.arg();
    let half = 0.5 * (0.5 * r0).acos();
    Ok(ks
        .map(|k| Annulus {
            k,
            r_minus: (0.5 * th0 - half + PI * k as f64).exp(),
            r_plus: (0.5 * th0 + half + PI * k as f64).exp(),
        })
        .collect())
}

/// Largest box in the ±μ′ window where boundary points are sampled.
fn sampling_window(eta: &dyn EtaProfile, params: &DomainParams) -> TBox {
    let w = TBox::square(params.mu_prime);
    match eta.sublevel_box() {
        Some(b) => w.intersect(&b),
        None => w,
    }
}

/// Boundary point above (t₂, t₃) with z₁ = e^{iL} + √(1−η) e^{iφ}.
fn lift(eta: &dyn EtaProfile, t2: f64, t3: f64, th2: f64, th3: f64, phi: f64) -> Point3 {
    let base = Point3::from_polar(C64::new(1.0, 0.0), t2, th2, t3, th3);
    let l = base.log_mod();
    let r = (1.0 - eta.value(t2, t3)).max(0.0).sqrt();
    Point3 { z1: C64::from_polar(1.0, l) + C64::from_polar(r, phi), ..base }
}

/// Bisection for η = target along the ray from the origin in direction `ang`,
/// out to the window edge. Returns the last point with η < target.
fn ray_root(eta: &dyn EtaProfile, win: &TBox, ang: f64, target: f64) -> Option<(f64, f64)> {
    let (c, s) = (ang.cos(), ang.sin());
    let reach = |lo: f64, hi: f64, d: f64| -> f64 {
        if d > 0.0 {
            hi / d
        } else if d < 0.0 {
            lo / d
        } else {
            f64::INFINITY
        }
    };
    let rmax = reach(win.t2_min, win.t2_max, c).min(reach(win.t3_min, win.t3_max, s));
    if !(rmax.is_finite() && rmax > 0.0) {
        return None;
    }
    if eta.value(0.0, 0.0) >= target || eta.value(rmax * c, rmax * s) < target {
        return None;
    }
    let (mut lo, mut hi) = (0.0, rmax);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if eta.value(mid * c, mid * s) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((lo * c, lo * s))
}

/// Boundary points of 𝒲_η above the ±μ′ window.
///
/// 80% of the points have η < 1 − 10⁻³; when the profile is smooth and
/// reaches 1, the rest sit within 10⁻³ of the arcs {η = 1}, every fourth
/// of them exactly on an arc (z₁ = e^{iL}). The first generic point lies
/// over (t₂, t₃) = (0, 0) whenever that is admissible.
pub fn boundary_sample(
    eta: &dyn EtaProfile,
    params: &DomainParams,
    n: usize,
    seed: u64,
) -> Result<Vec<Point3>> {
    let win = sampling_window(eta, params);
    if win.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let with_arcs = eta.flags().smooth && eta.attains_one();
    let n_arc = if with_arcs { n / 5 } else { 0 };
    let n_gen = n - n_arc;
    let generic_cut = 1.0 - 1e-3;
    let mut out = Vec::with_capacity(n);

    let mut attempts = 0usize;
    let max_attempts = 1000 * n.max(1);
    while out.len() < n_gen {
        let (t2, t3) = if out.is_empty() && win.contains(0.0, 0.0) && eta.value(0.0, 0.0) < generic_cut
        {
            (0.0, 0.0)
        } else {
            (rng.gen_range(win.t2_min..=win.t2_max), rng.gen_range(win.t3_min..=win.t3_max))
        };
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::EmptyBoundary);
        }
        if !(eta.value(t2, t3) < generic_cut) {
            continue;
        }
        let (th2, th3, phi) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        out.push(lift(eta, t2, t3, th2, th3, phi));
    }

    let mut k = 0usize;
    attempts = 0;
    while k < n_arc {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::EmptyBoundary);
        }
        let exact = k.is_multiple_of(4);
        let target = if exact { 1.0 } else { 1.0 - rng.gen_range(0.0..1e-3) };
        let ang = rng.gen_range(0.0..TAU);
        let (th2, th3, phi) = (rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU));
        let Some((t2, t3)) = ray_root(eta, &win, ang, target) else { continue };
        let mut p = lift(eta, t2, t3, th2, th3, phi);
        if exact {
            p.z1 = C64::from_polar(1.0, p.log_mod());
        }
        out.push(p);
        k += 1;
    }
    Ok(out)
}

/// Two vectors spanning the complex tangent space T^{1,0}_p ∂𝒲_η.
pub fn tangent_frame(p: &Point3, eta: &dyn EtaProfile) -> Result<[[C64; 3]; 2]> {
    let rho = eval_rho(p, eta);
    if !(rho.abs() <= BOUNDARY_TOL) {
        return Err(Error::NotOnBoundary { rho });
    }
    let l = p.log_mod();
    let eil = C64::from_polar(1.0, l);
    let j = eta.jet(p.t2(), p.t3());
    let zero = C64::new(0.0, 0.0);
    if (p.z1 - eil).norm() <= ARC_TOL {
        if j.d2 == 0.0 && j.d3 == 0.0 {
            return Err(Error::DegenerateFrame);
        }
        return Ok([
            [C64::new(1.0, 0.0), zero, zero],
            [zero, p.z2 * j.d3, -p.z3 * j.d2],
        ]);
    }
    let im = 2.0 * (p.z1 * eil.conj()).im;
    let g = p.z1.conj() - eil.conj();
    Ok([
        [C64::from(im - j.d2), p.z2 * g, zero],
        [C64::from(im - j.d3), zero, p.z3 * g],
    ])
}
