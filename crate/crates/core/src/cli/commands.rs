//! The five commands. Each returns the files it wrote and whether its
//! verdict passed; all output is assembled in memory and written at the end.

use super::config::{CertifyConfig, KernelConfig, NebenhulleConfig, NormsConfig, ProfileKind, SelectConfig, SelectionConfig};
use crate::bergman::{nebenhulle_report, norm_integral, norm_monte_carlo, NormIntegralSpec, NormValue};
use crate::error::{Error, Result};
use crate::geometry::{nu, nu_prime, DomainParams, MuBound, C64};
use crate::kernels::{asymptotic_d, kernel_quadrature_d, KernelSettings, WALL_THRESHOLD};
use crate::levi::{certify, select_constants, CertifySettings, SelectionResult, SelectionSettings};
use crate::profiles::{
    CharSquareProfile, ConvexSumProfile, EtaProfile, SeparableProfile, TwoSidedParams, TwoSidedProfile, ZeroProfile,
};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub pass: bool,
    pub message: String,
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(dir: &Path, name: &str, body: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let p = dir.join(name);
    std::fs::write(&p, body)?;
    files.push(p);
    Ok(())
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn selection_settings(c: Option<SelectionConfig>) -> SelectionSettings {
    let c = c.unwrap_or_default();
    SelectionSettings { grid: c.grid, refine_from: c.refine_from, delta: c.delta, max_refine_change: c.max_refine_change }
}

fn build_profile(c: &CertifyConfig, mu_prime: f64) -> Result<(Box<dyn EtaProfile>, Option<SelectionResult>)> {
    Ok(match c.profile {
        ProfileKind::Zero => (Box::new(ZeroProfile), None),
        ProfileKind::CharSquare => (Box::new(CharSquareProfile::new(c.mu)?), None),
        ProfileKind::ConvexSum => (Box::new(ConvexSumProfile::with_default_phi(c.mu, mu_prime)?), None),
        ProfileKind::Separable => (Box::new(SeparableProfile::with_default_phi(c.mu, mu_prime)?), None),
        ProfileKind::TwoSided => {
            let shape = TwoSidedParams::symmetric(
                c.mu,
                c.b_factor.unwrap_or(1.01),
                c.a_factor.unwrap_or(1.2),
                c.c_plus.unwrap_or(0.0),
                c.c_minus.unwrap_or(0.0),
            );
            if c.c_plus.is_some() {
                (Box::new(TwoSidedProfile::new(shape)?), None)
            } else {
                let sel = select_constants(&shape, &selection_settings(c.selection))?;
                (Box::new(TwoSidedProfile::new(sel.params)?), Some(sel))
            }
        }
    })
}

pub fn cmd_certify(c: &CertifyConfig, seed: Option<u64>, out: &Path) -> Result<Outcome> {
    let mu_prime = c.mu_prime.unwrap_or(c.mu + 1.0);
    let params = DomainParams::new(c.mu, mu_prime, MuBound::Profile)?;
    let (eta, sel) = build_profile(c, mu_prime)?;
    let s = CertifySettings {
        n_samples: c.n_samples,
        seed: seed.unwrap_or(c.seed),
        tol: c.tol,
        edge_probes: c.edge_probes,
        neighborhood_grid: c.neighborhood_grid,
    };
    let report = certify(eta.as_ref(), &params, &s)?;

    let mut csv = String::from("t2,t3,ineq1,ineq3,lambda_min,lambda_max,verdict\n");
    for r in &report.samples {
        let (i1, i3) = r.ineq.map(|v| (v.ineq1, v.ineq3)).unwrap_or((f64::NAN, f64::NAN));
        let (l0, l1) = r.levi.map(|l| (l.eigenvalues[0], l.eigenvalues[1])).unwrap_or((f64::NAN, f64::NAN));
        let v = if r.pass() { "pass" } else { "fail" };
        let _ = writeln!(csv, "{},{},{},{},{},{},{v}", num(r.t2), num(r.t3), num(i1), num(i3), num(l0), num(l1));
    }
    let mut doc = serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?;
    if let Some(m) = doc.as_object_mut() {
        m.remove("samples");
    }
    let mut files = Vec::new();
    write_file(out, "certify_report.json", &json(&doc)?, &mut files)?;
    write_file(out, "certify_samples.csv", &csv, &mut files)?;
    if let Some(sel) = &sel {
        write_file(out, "selection.json", &json(sel)?, &mut files)?;
    }
    let mut message = format!(
        "{}: {} samples, {} failed, min relative eigenvalue {:.3e}",
        report.profile, report.n_samples, report.n_failed, report.min_relative_eigenvalue
    );
    if let Some(w) = &report.witness {
        let l = w.levi.map(|l| l.relative_min()).unwrap_or(f64::NAN);
        let _ = write!(message, "\nwitness at (t2, t3) = ({:.6}, {:.6}), relative eigenvalue {l:.3e}", w.t2, w.t3);
        if let Some(n) = &w.note {
            let _ = write!(message, " ({n})");
        }
    }
    Ok(Outcome { files, pass: report.verdict, message })
}

pub fn cmd_select(c: &SelectConfig, out: &Path) -> Result<Outcome> {
    let shape = TwoSidedParams::symmetric(c.mu, c.b_factor, c.a_factor, 0.0, 0.0);
    let r = select_constants(&shape, &selection_settings(c.selection))?;
    let mut files = Vec::new();
    write_file(out, "selection.json", &json(&r)?, &mut files)?;
    let message = format!("c_plus = {:.6e}, c_minus = {:.6e}", r.params.plus.c, r.params.minus.c);
    Ok(Outcome { files, pass: true, message })
}

/// Least-squares slope of y against x.
pub fn fit_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn cmd_kernel(c: &KernelConfig, out: &Path) -> Result<Outcome> {
    let s = KernelSettings { rel_tol: c.rel_tol, tail_tol: c.tail_tol, ..Default::default() };
    let asymp_ok = c.mu > std::f64::consts::FRAC_PI_2;
    let mut csv = String::from("re_d,im_d,k_re,k_im,asymp_re,asymp_im,abs_err\n");
    let mut decay = Vec::new();
    let mut herm: f64 = 0.0;
    for (ii, &im) in c.im_d.iter().enumerate() {
        for &re in &c.re_d {
            let d = C64::new(re, im);
            let k = kernel_quadrature_d(c.mu, d, &s)?.value;
            // K(ζ′, ζ) sits at −d̄
            let kr = kernel_quadrature_d(c.mu, -d.conj(), &s)?.value;
            herm = herm.max((kr - k.conj()).norm() / k.norm().max(f64::MIN_POSITIVE));
            let a = if asymp_ok && re.abs() >= WALL_THRESHOLD { Some(asymptotic_d(c.mu, d)?) } else { None };
            let (ar, ai, err) = match a {
                Some(a) => (a.re, a.im, (k - a).norm()),
                None => (f64::NAN, f64::NAN, f64::NAN),
            };
            if ii == 0 && re >= WALL_THRESHOLD && err > 0.0 && err.is_finite() {
                decay.push((re, err.ln()));
            }
            let _ = writeln!(csv, "{},{},{},{},{},{},{}", num(re), num(im), num(k.re), num(k.im), num(ar), num(ai), num(err));
        }
    }
    let slope = fit_slope(&decay).unwrap_or(f64::NAN);
    let mut summary = String::from("quantity,value\n");
    for (q, v) in [
        ("mu", c.mu),
        ("nu", nu(c.mu)),
        ("nu_prime", nu_prime(c.mu)),
        ("decay_slope", slope),
        ("hermitian_defect", herm),
    ] {
        let _ = writeln!(summary, "{q},{}", num(v));
    }
    let mut files = Vec::new();
    write_file(out, "kernel_scan.csv", &csv, &mut files)?;
    write_file(out, "kernel_summary.csv", &summary, &mut files)?;
    let message = format!("{} kernel values, decay slope {slope:.4}, hermitian defect {herm:.2e}", c.re_d.len() * c.im_d.len());
    Ok(Outcome { files, pass: true, message })
}

pub fn cmd_norms(c: &NormsConfig, seed: Option<u64>, out: &Path) -> Result<Outcome> {
    let seed = seed.unwrap_or(c.seed);
    let mut csv = String::from("a,b,j,k,mu,value,mc_estimate,mc_stderr\n");
    for (i, r) in c.rows.iter().enumerate() {
        let spec = NormIntegralSpec { a: r.a, b: r.b, j: r.j, k: r.k, mu: r.mu.unwrap_or(c.mu) };
        let v = norm_integral(&spec)?;
        let (m, se) = match v {
            NormValue::Finite(_) if c.mc_samples > 0 => {
                let e = norm_monte_carlo(&spec, c.mc_samples, seed.wrapping_add(i as u64))?;
                (e.mean, e.stderr)
            }
            _ => (f64::NAN, f64::NAN),
        };
        let _ = writeln!(csv, "{},{},{},{},{},{v},{},{}", num(spec.a), num(spec.b), spec.j, spec.k, num(spec.mu), num(m), num(se));
    }
    let mut files = Vec::new();
    write_file(out, "norms.csv", &csv, &mut files)?;
    Ok(Outcome { files, pass: true, message: format!("{} norm rows", c.rows.len()) })
}

pub fn cmd_nebenhulle(c: &NebenhulleConfig, out: &Path) -> Result<Outcome> {
    let r = nebenhulle_report(c.mu, c.nodes)?;
    let mut files = Vec::new();
    write_file(out, "nebenhulle.json", &json(&r)?, &mut files)?;
    let passed = r.rows.iter().filter(|x| x.verdict == "pass").count();
    let message = format!(
        "a = {:.6}: {passed} of {} rows reproduced, all as expected: {}",
        r.a,
        r.rows.len(),
        r.all_as_expected
    );
    Ok(Outcome { files, pass: r.all_as_expected, message })
}
