//! Choice of c± for the two-sided family so that both inequalities hold
//! near the boundary.

use crate::error::{Error, Result};
use crate::optimize::{nelder_mead_max, top_over, Candidate};
use crate::profiles::{SideParams, TwoSidedParams};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SelectionSettings {
    pub grid: usize,
    pub refine_from: usize,
    /// c = (1 + delta)·max(...)
    pub delta: f64,
    /// GridTooCoarse is raised when refinement moves a maximum by more than this.
    pub max_refine_change: f64,
}

impl Default for SelectionSettings {
    fn default() -> Self {
        Self { grid: 400, refine_from: 5, delta: 0.05, max_refine_change: 0.01 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Maximum {
    pub value: f64,
    pub t2: f64,
    pub t3: f64,
    pub grid_value: f64,
    pub rel_refine_change: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SelectionResult {
    pub params: TwoSidedParams,
    pub m_plus: Maximum,
    pub m_minus: Maximum,
    pub n_plus: Maximum,
    pub n_minus: Maximum,
    pub settings: SelectionSettings,
}

/// The coefficients of the lower bound
/// α₁₁c₊c₋ + α₁₀c₊ + α₀₁c₋ + α₀₀ ≤ (c₊c₋)⁻¹(s₊−B₊²)⁴(s₋−B₋²)⁴·Q/(η₊η₋)
/// for the cross term Q of the decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Alphas {
    pub a11: f64,
    pub a10: f64,
    pub a01: f64,
    pub a00: f64,
}

/// Region quantities at (t₂, t₃) for given sides.
struct Local {
    e2: f64,
    e3: f64,
    s_plus: f64,
    s_minus: f64,
}

impl Local {
    fn at(t2: f64, t3: f64) -> Self {
        let (e2, e3) = (t2.exp(), t3.exp());
        Local { e2, e3, s_plus: e2 + e3, s_minus: 1.0 / e2 + 1.0 / e3 }
    }
}

/// {e^{t₂}+e^{t₃} ≤ A₊², e^{−t₂}+e^{−t₃} ≤ A₋²}, a c-independent superset of K.
pub fn in_k_hat(p: &TwoSidedParams, t2: f64, t3: f64) -> bool {
    let l = Local::at(t2, t3);
    l.s_plus <= p.plus.a * p.plus.a && l.s_minus <= p.minus.a * p.minus.a
}

fn m_bound(s: f64, b2: f64, prod: f64) -> Option<f64> {
    if !(s > b2) {
        return None;
    }
    let first = s - b2 * b2 / s;
    let inner = 1.0 + 4.0 * prod * s * s * (s - b2) / (s + b2);
    Some(first * (0.5 + 0.5 * inner.sqrt()))
}

/// 𝓜₊ integrand at (t₂, t₃); `None` off {s₊ > B₊²}.
pub fn m_plus_at(p: &TwoSidedParams, t2: f64, t3: f64) -> Option<f64> {
    let l = Local::at(t2, t3);
    m_bound(l.s_plus, p.plus.b * p.plus.b, 1.0 / (l.e2 * l.e3))
}

/// 𝓜₋ integrand at (t₂, t₃); `None` off {s₋ > B₋²}.
pub fn m_minus_at(p: &TwoSidedParams, t2: f64, t3: f64) -> Option<f64> {
    let l = Local::at(t2, t3);
    m_bound(l.s_minus, p.minus.b * p.minus.b, l.e2 * l.e3)
}

/// Where both summands are positive and x = |z₂|²/|z₃|² lies in the
/// hyperbolic regions x ≥ B₊²B₋²/4 or x ≤ 4/(B₊²B₋²).
fn cross_region(p: &TwoSidedParams, t2: f64, t3: f64) -> Option<Local> {
    let l = Local::at(t2, t3);
    let (bp2, bm2) = (p.plus.b * p.plus.b, p.minus.b * p.minus.b);
    let x = l.e2 / l.e3;
    let hyper = x >= bp2 * bm2 / 4.0 || x <= 4.0 / (bp2 * bm2);
    (hyper && l.s_plus > bp2 && l.s_minus > bm2).then_some(l)
}

pub fn alphas_at(p: &TwoSidedParams, t2: f64, t3: f64) -> Alphas {
    let l = Local::at(t2, t3);
    let (bp2, bm2) = (p.plus.b * p.plus.b, p.minus.b * p.minus.b);
    let x = l.e2 / l.e3;
    let pp = l.s_plus - bp2;
    let qq = l.s_minus - bm2;
    let d = x + 1.0 / x - 2.0;
    Alphas {
        a11: (x - 1.0 / x).powi(2),
        a10: -x * x / l.e3 - 1.0 / (x * x * l.e2),
        a01: -x * x * l.e2 - l.e3 / (x * x),
        a00: -8.0 * pp * qq - 2.0 * pp * pp * qq * qq * d,
    }
}

/// 𝓝₊ integrand (x⁴|z₂|² + |z₃|²)/(x² − 1)².
pub fn n_plus_at(p: &TwoSidedParams, t2: f64, t3: f64) -> Option<f64> {
    let l = cross_region(p, t2, t3)?;
    let x = l.e2 / l.e3;
    Some((x.powi(4) * l.e2 + l.e3) / (x * x - 1.0).powi(2))
}

/// 𝓝₋ integrand (−α₁₀c₊ − α₀₀)/(α₁₁c₊ + α₀₁) for a given c₊.
pub fn n_minus_at(p: &TwoSidedParams, c_plus: f64, t2: f64, t3: f64) -> Option<f64> {
    cross_region(p, t2, t3)?;
    let a = alphas_at(p, t2, t3);
    let den = a.a11 * c_plus + a.a01;
    if !(den > 0.0) {
        return Some(f64::INFINITY);
    }
    Some((-a.a10 * c_plus - a.a00) / den)
}

/// Nodes of an n×n grid in (log s₊, log s₋) covering K̂, mapped back to
/// (t₂, t₃) on both sides of the diagonal. The boundary of K̂ lies on grid
/// lines, so maxima sitting on it are hit exactly.
pub fn k_hat_nodes(p: &TwoSidedParams, n: usize) -> Vec<(f64, f64)> {
    let (ap2, am2) = (p.plus.a * p.plus.a, p.minus.a * p.minus.a);
    // on K̂: s₊ s₋ = (e^{t₂}+e^{t₃})²e^{−t₂−t₃} ≥ 4
    let (lo_p, hi_p) = ((4.0 / am2).ln(), ap2.ln());
    let (lo_m, hi_m) = ((4.0 / ap2).ln(), am2.ln());
    let mut out = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        let sp = (lo_p + (hi_p - lo_p) * i as f64 / (n - 1) as f64).exp();
        for j in 0..n {
            let sm = (lo_m + (hi_m - lo_m) * j as f64 / (n - 1) as f64).exp();
            // u + w = s₊, uw = s₊/s₋
            let prod = sp / sm;
            let disc = sp * sp - 4.0 * prod;
            if disc < 0.0 {
                continue;
            }
            let big = 0.5 * (sp + disc.sqrt());
            let small = prod / big;
            let (a, b) = (big.ln(), small.ln());
            out.push((a, b));
            if disc > 0.0 {
                out.push((b, a));
            }
        }
    }
    out
}

fn maximize<F>(f: &F, nodes: &[(f64, f64)], s: &SelectionSettings, which: &str) -> Result<Maximum>
where
    F: Fn(f64, f64) -> Option<f64> + Sync,
{
    let top = top_over(f, nodes, s.refine_from);
    let Some(first) = top.first().copied() else {
        return Ok(Maximum { value: 0.0, t2: 0.0, t3: 0.0, grid_value: 0.0, rel_refine_change: 0.0 });
    };
    if !first.value.is_finite() {
        return Err(Error::NonConvergent(format!("{which} is unbounded on the region")));
    }
    let mut best: Candidate = first;
    for c in &top {
        let r = nelder_mead_max(f, *c, 1e-3, 1e-12, 4000);
        if r.value > best.value {
            best = r;
        }
    }
    let rel = (best.value - first.value).abs() / first.value.abs().max(f64::MIN_POSITIVE);
    if rel > s.max_refine_change {
        return Err(Error::GridTooCoarse { which: which.into(), rel_change: rel });
    }
    Ok(Maximum { value: best.value, t2: best.t2, t3: best.t3, grid_value: first.value, rel_refine_change: rel })
}

/// Computes 𝓜±, 𝓝± over K̂ and sets c₊ = (1+δ)max(A₊², 𝓜₊, 𝓝₊), then
/// c₋ = (1+δ)max(A₋², 𝓜₋, 𝓝₋(c₊)). The c fields of `shape` are ignored.
pub fn select_constants(shape: &TwoSidedParams, s: &SelectionSettings) -> Result<SelectionResult> {
    shape.validate(false)?;
    if s.grid < 8 || s.refine_from == 0 || !(s.delta > 0.0) {
        return Err(Error::OutOfRange("selection settings: grid >= 8, refine_from >= 1, delta > 0".into()));
    }
    let p = *shape;
    let nodes = k_hat_nodes(&p, s.grid);
    let within = |t2: f64, t3: f64| in_k_hat(&p, t2, t3);
    let m_plus = maximize(&|a, b| if within(a, b) { m_plus_at(&p, a, b) } else { None }, &nodes, s, "M+")?;
    let m_minus = maximize(&|a, b| if within(a, b) { m_minus_at(&p, a, b) } else { None }, &nodes, s, "M-")?;
    let n_plus = maximize(&|a, b| if within(a, b) { n_plus_at(&p, a, b) } else { None }, &nodes, s, "N+")?;
    let k = 1.0 + s.delta;
    let c_plus = k * (p.plus.a * p.plus.a).max(m_plus.value).max(n_plus.value);
    let n_minus =
        maximize(&|a, b| if within(a, b) { n_minus_at(&p, c_plus, a, b) } else { None }, &nodes, s, "N-")?;
    let c_minus = k * (p.minus.a * p.minus.a).max(m_minus.value).max(n_minus.value);
    let params = TwoSidedParams {
        mu: p.mu,
        plus: SideParams { c: c_plus, ..p.plus },
        minus: SideParams { c: c_minus, ..p.minus },
    };
    Ok(SelectionResult { params, m_plus, m_minus, n_plus, n_minus, settings: *s })
}
