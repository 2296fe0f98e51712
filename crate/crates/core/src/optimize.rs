//! Grid search with Nelder–Mead polishing for maximizing functions of (t₂, t₃)
//! over a region given by an objective that returns `None` off the region.

use crate::profiles::TBox;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub value: f64,
    pub t2: f64,
    pub t3: f64,
}

/// The `k` largest values over an n×n grid of nodes (edges included).
pub fn grid_top<F>(f: &F, bx: &TBox, n: usize, k: usize) -> Vec<Candidate>
where
    F: Fn(f64, f64) -> Option<f64> + Sync,
{
    let step2 = (bx.t2_max - bx.t2_min) / (n - 1) as f64;
    let step3 = (bx.t3_max - bx.t3_min) / (n - 1) as f64;
    let rows: Vec<Vec<Candidate>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let t2 = bx.t2_min + step2 * i as f64;
            (0..n)
                .filter_map(|j| {
                    let t3 = bx.t3_min + step3 * j as f64;
                    f(t2, t3).filter(|v| v.is_finite()).map(|value| Candidate { value, t2, t3 })
                })
                .collect()
        })
        .collect();
    let mut all: Vec<Candidate> = rows.into_iter().flatten().collect();
    all.sort_by(|a, b| b.value.total_cmp(&a.value).then(a.t2.total_cmp(&b.t2)).then(a.t3.total_cmp(&b.t3)));
    all.truncate(k);
    all
}

/// The `k` largest values over an explicit list of nodes.
pub fn top_over<F>(f: &F, nodes: &[(f64, f64)], k: usize) -> Vec<Candidate>
where
    F: Fn(f64, f64) -> Option<f64> + Sync,
{
    let mut all: Vec<Candidate> = nodes
        .par_iter()
        .filter_map(|&(t2, t3)| f(t2, t3).filter(|v| v.is_finite()).map(|value| Candidate { value, t2, t3 }))
        .collect();
    all.sort_by(|a, b| b.value.total_cmp(&a.value).then(a.t2.total_cmp(&b.t2)).then(a.t3.total_cmp(&b.t3)));
    all.truncate(k);
    all
}

/// Maximize with Nelder–Mead from `start`, initial simplex edge `step`.
/// Stops when the spread of simplex values is below `rel_tol` relative.
pub fn nelder_mead_max<F>(f: &F, start: Candidate, step: f64, rel_tol: f64, max_iter: usize) -> Candidate
where
    F: Fn(f64, f64) -> Option<f64>,
{
    let g = |x: [f64; 2]| -> f64 { f(x[0], x[1]).filter(|v| v.is_finite()).unwrap_or(f64::NEG_INFINITY) };
    let mut s: Vec<([f64; 2], f64)> = [[start.t2, start.t3], [start.t2 + step, start.t3], [start.t2, start.t3 + step]]
        .into_iter()
        .map(|x| (x, g(x)))
        .collect();
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..max_iter {
        s.sort_by(|a, b| b.1.total_cmp(&a.1));
        let (best, worst) = (s[0].1, s[2].1);
        let diam = (1..3)
            .map(|i| (s[0].0[0] - s[i].0[0]).hypot(s[0].0[1] - s[i].0[1]))
            .fold(0.0, f64::max);
        let flat = worst.is_finite() && (best - worst) <= rel_tol * best.abs().max(f64::MIN_POSITIVE);
        if flat || diam < 1e-13 * (1.0 + s[0].0[0].abs() + s[0].0[1].abs()) {
            break;
        }
        let c = [(s[0].0[0] + s[1].0[0]) * 0.5, (s[0].0[1] + s[1].0[1]) * 0.5];
        let xr = lerp(c, s[2].0, -1.0);
        let fr = g(xr);
        if fr > s[0].1 {
            let xe = lerp(c, s[2].0, -2.0);
            let fe = g(xe);
            s[2] = if fe > fr { (xe, fe) } else { (xr, fr) };
        } else if fr > s[1].1 {
            s[2] = (xr, fr);
        } else {
            let (xc, fc) = if fr > s[2].1 {
                let x = lerp(c, xr, 0.5);
                (x, g(x))
            } else {
                let x = lerp(c, s[2].0, 0.5);
                (x, g(x))
            };
            if fc > s[2].1.max(fr) {
                s[2] = (xc, fc);
            } else {
                let b = s[0].0;
                for v in s.iter_mut().skip(1) {
                    v.0 = lerp(b, v.0, 0.5);
                    v.1 = g(v.0);
                }
            }
        }
    }
    s.sort_by(|a, b| b.1.total_cmp(&a.1));
    Candidate { value: s[0].1, t2: s[0].0[0], t3: s[0].0[1] }
}
