//! Sampling certification of Levi pseudoconvexity.

use super::forms::{ineq_values, restricted_levi, IneqValues, RestrictedLevi};
use crate::error::Result;
use crate::geometry::{boundary_sample, DomainParams, Point3, C64};
use crate::profiles::{EtaProfile, TBox};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Random,
    EdgeProbe,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleRecord {
    pub kind: SampleKind,
    pub t2: f64,
    pub t3: f64,
    pub point: Point3,
    pub ineq: Option<IneqValues>,
    pub levi: Option<RestrictedLevi>,
    pub levi_ok: bool,
    pub ineq_ok: bool,
    pub note: Option<String>,
}

impl SampleRecord {
    pub fn pass(&self) -> bool {
        self.levi_ok && self.ineq_ok
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NeighborhoodScan {
    pub bbox: TBox,
    pub grid: usize,
    pub eta_cap: f64,
    pub points_checked: usize,
    pub min_rel_ineq1: f64,
    pub min_rel_ineq3: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PseudoconvexityReport {
    pub profile: String,
    pub tolerance: f64,
    pub n_samples: usize,
    pub n_failed: usize,
    pub min_relative_eigenvalue: f64,
    pub verdict: bool,
    pub witness: Option<SampleRecord>,
    pub neighborhood: Option<NeighborhoodScan>,
    pub samples: Vec<SampleRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CertifySettings {
    pub n_samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub edge_probes: bool,
    /// Grid size of the inequality scan on a neighborhood of {η ≤ 1}; 0 disables it.
    pub neighborhood_grid: usize,
}

impl Default for CertifySettings {
    fn default() -> Self {
        Self { n_samples: 10_000, seed: 0, tol: 1e-9, edge_probes: true, neighborhood_grid: 200 }
    }
}

fn rel(v: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        v / scale
    } else {
        0.0
    }
}

pub fn examine(eta: &dyn EtaProfile, p: &Point3, kind: SampleKind, tol: f64) -> SampleRecord {
    let (t2, t3) = (p.t2(), p.t3());
    let mut note = None;
    let ineq = match ineq_values(eta, t2, t3) {
        Ok(v) => Some(v),
        Err(e) => {
            note = Some(e.to_string());
            None
        }
    };
    let levi = match restricted_levi(p, eta) {
        Ok(l) => Some(l),
        Err(e) => {
            note = Some(e.to_string());
            None
        }
    };
    SampleRecord {
        kind,
        t2,
        t3,
        point: *p,
        levi_ok: levi.map(|l| l.is_psd(tol)).unwrap_or(false),
        ineq_ok: ineq.map(|v| v.holds(tol)).unwrap_or(false),
        ineq,
        levi,
        note,
    }
}

/// Boundary points z₁ = (1 − √(1−η))e^{iL} just outside the flat square, at
/// distance ε = 2^{−m}(μ′ − μ), m = 1..20, along each half axis.
pub fn edge_probe_points(eta: &dyn EtaProfile, params: &DomainParams) -> Vec<Point3> {
    let (mu, mp) = (params.mu, params.mu_prime);
    let mut out = Vec::new();
    for m in 1..=20 {
        let eps = (mp - mu) * 0.5f64.powi(m);
        for (t2, t3) in [(mu + eps, 0.0), (0.0, mu + eps), (-mu - eps, 0.0), (0.0, -mu - eps)] {
            let v = eta.value(t2, t3);
            if !(v < 1.0) {
                continue;
            }
            let base = Point3::from_polar(C64::new(0.0, 0.0), t2, 0.0, t3, 0.0);
            let l = base.log_mod();
            out.push(Point3 { z1: C64::from_polar(1.0 - (1.0 - v).sqrt(), l), ..base });
        }
    }
    out
}

/// Checks both inequalities on a grid over `bbox`, keeping points with η ≤ eta_cap.
pub fn neighborhood_scan(eta: &dyn EtaProfile, bbox: &TBox, grid: usize, eta_cap: f64, tol: f64) -> NeighborhoodScan {
    let rows: Vec<(usize, f64, f64)> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let t2 = bbox.t2_min + (bbox.t2_max - bbox.t2_min) * i as f64 / (grid - 1) as f64;
            let mut acc = (0usize, f64::INFINITY, f64::INFINITY);
            for j in 0..grid {
                let t3 = bbox.t3_min + (bbox.t3_max - bbox.t3_min) * j as f64 / (grid - 1) as f64;
                if eta.value(t2, t3) > eta_cap || !eta.is_smooth_at(t2, t3) {
                    continue;
                }
                let Ok(v) = ineq_values(eta, t2, t3) else { continue };
                acc.0 += 1;
                acc.1 = acc.1.min(rel(v.ineq1, v.scale1));
                acc.2 = acc.2.min(rel(v.ineq3, v.scale3));
            }
            acc
        })
        .collect();
    let points_checked = rows.iter().map(|r| r.0).sum();
    let min1 = rows.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let min3 = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    NeighborhoodScan {
        bbox: *bbox,
        grid,
        eta_cap,
        points_checked,
        min_rel_ineq1: min1,
        min_rel_ineq3: min3,
        pass: min1 >= -tol && min3 >= -tol,
    }
}

/// Samples the boundary and tests the restricted Levi form and both
/// inequalities at every sample.
pub fn certify(eta: &dyn EtaProfile, params: &DomainParams, s: &CertifySettings) -> Result<PseudoconvexityReport> {
    let pts = boundary_sample(eta, params, s.n_samples, s.seed)?;
    let mut tagged: Vec<(Point3, SampleKind)> = pts.into_iter().map(|p| (p, SampleKind::Random)).collect();
    if s.edge_probes {
        tagged.extend(edge_probe_points(eta, params).into_iter().map(|p| (p, SampleKind::EdgeProbe)));
    }
    let samples: Vec<SampleRecord> = tagged.par_iter().map(|(p, k)| examine(eta, p, *k, s.tol)).collect();
    let n_failed = samples.iter().filter(|r| !r.pass()).count();
    let min_relative_eigenvalue = samples
        .iter()
        .filter_map(|r| r.levi.map(|l| l.relative_min()))
        .fold(f64::INFINITY, f64::min);
    let witness = samples
        .iter()
        .filter(|r| !r.pass())
        .min_by(|a, b| {
            let key = |r: &SampleRecord| r.levi.map(|l| l.relative_min()).unwrap_or(f64::NEG_INFINITY);
            key(a).total_cmp(&key(b))
        })
        .cloned();
    let neighborhood = match eta.sublevel_box() {
        Some(b) if s.neighborhood_grid >= 2 => {
            Some(neighborhood_scan(eta, &b.dilate(0.05), s.neighborhood_grid, 1.05, s.tol))
        }
        _ => None,
    };
    let verdict = n_failed == 0 && neighborhood.as_ref().map(|n| n.pass).unwrap_or(true);
    Ok(PseudoconvexityReport {
        profile: eta.name(),
        tolerance: s.tol,
        n_samples: samples.len(),
        n_failed,
        min_relative_eigenvalue,
        verdict,
        witness,
        neighborhood,
        samples,
    })
}

/// Minimum relative restricted-Levi eigenvalue over the edge probes.
pub fn edge_sweep_min(eta: &dyn EtaProfile, params: &DomainParams) -> (f64, Option<SampleRecord>) {
    let mut best: (f64, Option<SampleRecord>) = (f64::INFINITY, None);
    for p in edge_probe_points(eta, params) {
        let r = examine(eta, &p, SampleKind::EdgeProbe, 0.0);
        if let Some(l) = r.levi {
            if l.relative_min() < best.0 {
                best = (l.relative_min(), Some(r));
            }
        }
    }
    best
}
