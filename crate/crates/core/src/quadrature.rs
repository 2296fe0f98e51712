//! Thin wrappers over Gauss–Legendre panels, double-exponential quadrature,
//! circle trapezoid sums and truncated power series in x².

use crate::geometry::C64;
use gauss_quad::GaussLegendre;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

/// A fixed Gauss–Legendre rule mapped onto arbitrary panels.
#[derive(Clone, Debug)]
pub struct Panels {
    pairs: Vec<(f64, f64)>,
}

impl Panels {
    pub fn new(order: usize) -> Self {
        let rule = GaussLegendre::new(NonZeroUsize::new(order.max(1)).unwrap());
        Self { pairs: rule.as_node_weight_pairs().to_vec() }
    }

    /// Nodes and weights of the rule on [a, b].
    pub fn nodes(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (c, m) = (0.5 * (b - a), 0.5 * (a + b));
        self.pairs.iter().map(move |&(x, w)| (m + c * x, c * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.nodes(a, b).map(|(x, w)| w * f(x)).sum()
    }

    pub fn integrate_c<F: FnMut(f64) -> C64>(&self, a: f64, b: f64, mut f: F) -> C64 {
        self.nodes(a, b).map(|(x, w)| f(x) * w).sum()
    }

    /// Sum over consecutive panels [b_i, b_{i+1}], each split into `sub` equal parts.
    pub fn integrate_breaks<F: FnMut(f64) -> f64>(&self, breaks: &[f64], sub: usize, mut f: F) -> f64 {
        let mut s = 0.0;
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if !(b > a) {
                continue;
            }
            let step = (b - a) / sub as f64;
            for i in 0..sub {
                s += self.integrate(a + step * i as f64, a + step * (i + 1) as f64, &mut f);
            }
        }
        s
    }
}

/// Double-exponential quadrature on a finite interval (endpoint singularities allowed).
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> (f64, f64) {
    let o = quadrature::double_exponential::integrate(f, a, b, abs_tol);
    (o.integral, o.error_estimate)
}

/// (1/2π)∮ g(ζ) dθ over the circle ζ = c + r e^{iθ}, n-node trapezoid.
pub fn circle_mean<F: FnMut(C64) -> C64>(center: C64, radius: f64, n: usize, mut g: F) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for m in 0..n {
        let th = 2.0 * PI * m as f64 / n as f64;
        s += g(center + C64::from_polar(radius, th));
    }
    s / n as f64
}

/// Coefficients of sinh(c·x)/(c·x) as a series in x², first `n` terms.
pub fn sinhc_series(c: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n);
    let mut term = 1.0;
    for k in 0..n {
        out.push(term);
        term *= c * c / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
    }
    out
}

pub fn series_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

/// 1/a as a truncated series; a[0] must be nonzero.
pub fn series_inv(a: &[f64]) -> Vec<f64> {
    let mut r = vec![0.0; a.len()];
    r[0] = 1.0 / a[0];
    for k in 1..a.len() {
        let s: f64 = (1..=k).map(|i| a[i] * r[k - i]).sum();
        r[k] = -s / a[0];
    }
    r
}

pub fn series_eval(a: &[f64], x: f64) -> f64 {
    a.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}
