//! The strip weights ω_{j,k}(x+iy) = π²(e^{(j+1)·}χ_{I_μ}) * (e^{(k+1)·}χ_{I_μ}) * χ_{I_{π/2}}(y)
//! and their transforms α̃(ξ) = ∫ω(y)e^{−2yξ}dy.

use crate::error::{Error, Result};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StripWeight {
    pub mu: f64,
    pub j: i32,
    pub k: i32,
}

/// c·u^pow·e^{rate·u}
#[derive(Clone, Copy, Debug)]
struct Term {
    coef: f64,
    rate: f64,
    pow: u8,
}

/// ∫_a^b u^m e^{ru} du for m ∈ {0, 1}.
fn int_term(t: &Term, a: f64, b: f64) -> f64 {
    let r = t.rate;
    let v = match (t.pow, r == 0.0) {
        (0, true) => b - a,
        (0, false) => ((r * b).exp() - (r * a).exp()) / r,
        (_, true) => 0.5 * (b - a) * (b + a),
        (_, false) => (r * b).exp() * (b / r - 1.0 / (r * r)) - (r * a).exp() * (a / r - 1.0 / (r * r)),
    };
    t.coef * v
}

/// sinh(a·x)/x, equal to a at x = 0.
pub fn sinh_ratio(a: f64, x: f64) -> f64 {
    let ax = a * x;
    if ax.abs() < 1e-4 {
        let s = ax * ax;
        a * (1.0 + s / 6.0 + s * s / 120.0)
    } else {
        ax.sinh() / x
    }
}

impl StripWeight {
    pub fn new(mu: f64, j: i32, k: i32) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::OutOfRange(format!("mu must be positive, got {mu}")));
        }
        Ok(Self { mu, j, k })
    }

    /// β = 2μ + π/2, the half-width of the strip.
    pub fn beta(&self) -> f64 {
        2.0 * self.mu + FRAC_PI_2
    }

    /// Points in [−β, β] where ω fails to be smooth, sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let m2 = 2.0 * self.mu;
        let mut b: Vec<f64> = [-m2, 0.0, m2]
            .iter()
            .flat_map(|&u| [u - FRAC_PI_2, u + FRAC_PI_2])
            .collect();
        b.sort_by(|x, y| x.total_cmp(y));
        b.dedup();
        b
    }

    /// (e^{p·}χ_{I_μ}) * (e^{q·}χ_{I_μ}) on [−2μ, 0] and [0, 2μ].
    fn pieces(&self) -> [(f64, f64, Vec<Term>); 2] {
        let (p, q, mu) = ((self.j + 1) as f64, (self.k + 1) as f64, self.mu);
        let d = p - q;
        let t = |coef, rate, pow| Term { coef, rate, pow };
        if d == 0.0 {
            [
                (-2.0 * mu, 0.0, vec![t(1.0, q, 1), t(2.0 * mu, q, 0)]),
                (0.0, 2.0 * mu, vec![t(-1.0, q, 1), t(2.0 * mu, q, 0)]),
            ]
        } else {
            let (ep, em) = ((d * mu).exp() / d, (-d * mu).exp() / d);
            [
                (-2.0 * mu, 0.0, vec![t(ep, p, 0), t(-em, q, 0)]),
                (0.0, 2.0 * mu, vec![t(ep, q, 0), t(-em, p, 0)]),
            ]
        }
    }

    /// ω(y), by exact integration of the two-fold convolution over [y − π/2, y + π/2].
    pub fn spatial(&self, y: f64) -> f64 {
        let (lo, hi) = (y - FRAC_PI_2, y + FRAC_PI_2);
        let mut s = 0.0;
        for (a, b, terms) in self.pieces() {
            let (u0, u1) = (a.max(lo), b.min(hi));
            if u1 > u0 {
                s += terms.iter().map(|t| int_term(t, u0, u1)).sum::<f64>();
            }
        }
        (PI * PI * s).max(0.0)
    }

    /// α̃(ξ) = π²·S(2μ, ξ − (j+1)/2)·S(2μ, ξ − (k+1)/2)·S(π, ξ).
    pub fn spectral(&self, xi: f64) -> f64 {
        let m2 = 2.0 * self.mu;
        PI * PI
            * sinh_ratio(m2, xi - 0.5 * (self.j + 1) as f64)
            * sinh_ratio(m2, xi - 0.5 * (self.k + 1) as f64)
            * sinh_ratio(PI, xi)
    }

    /// ∫ω(y)dy.
    pub fn mass(&self) -> f64 {
        self.spectral(0.0)
    }
}
