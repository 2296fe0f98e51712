//! TOML run configuration. Each command reads its own section; unknown keys
//! are rejected everywhere.

use crate::error::{Error, Result};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub certify: Option<CertifyConfig>,
    pub select: Option<SelectConfig>,
    pub kernel: Option<KernelConfig>,
    pub norms: Option<NormsConfig>,
    pub nebenhulle: Option<NebenhulleConfig>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    Zero,
    CharSquare,
    ConvexSum,
    Separable,
    TwoSided,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertifyConfig {
    pub profile: ProfileKind,
    pub mu: f64,
    pub mu_prime: Option<f64>,
    #[serde(default = "d_samples")]
    pub n_samples: usize,
    #[serde(default = "d_tol")]
    pub tol: f64,
    #[serde(default = "d_true")]
    pub edge_probes: bool,
    #[serde(default = "d_neighborhood")]
    pub neighborhood_grid: usize,
    #[serde(default)]
    pub seed: u64,
    /// Two-sided profile only; c± are selected when omitted.
    pub b_factor: Option<f64>,
    pub a_factor: Option<f64>,
    pub c_plus: Option<f64>,
    pub c_minus: Option<f64>,
    pub selection: Option<SelectionConfig>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionConfig {
    #[serde(default = "d_grid")]
    pub grid: usize,
    #[serde(default = "d_refine_from")]
    pub refine_from: usize,
    #[serde(default = "d_delta")]
    pub delta: f64,
    #[serde(default = "d_refine_change")]
    pub max_refine_change: f64,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        Self { grid: d_grid(), refine_from: d_refine_from(), delta: d_delta(), max_refine_change: d_refine_change() }
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectConfig {
    pub mu: f64,
    #[serde(default = "d_b_factor")]
    pub b_factor: f64,
    #[serde(default = "d_a_factor")]
    pub a_factor: f64,
    #[serde(default)]
    pub selection: Option<SelectionConfig>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    pub mu: f64,
    pub re_d: Vec<f64>,
    #[serde(default = "d_im")]
    pub im_d: Vec<f64>,
    #[serde(default = "d_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "d_tail_tol")]
    pub tail_tol: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormRow {
    pub a: f64,
    pub b: f64,
    pub j: i32,
    pub k: i32,
    pub mu: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormsConfig {
    pub mu: f64,
    #[serde(default)]
    pub mc_samples: u64,
    #[serde(default)]
    pub seed: u64,
    pub rows: Vec<NormRow>,
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NebenhulleConfig {
    pub mu: f64,
    #[serde(default = "d_nodes")]
    pub nodes: usize,
}

fn d_samples() -> usize {
    10_000
}
fn d_tol() -> f64 {
    1e-9
}
fn d_true() -> bool {
    true
}
fn d_neighborhood() -> usize {
    200
}
fn d_grid() -> usize {
    400
}
fn d_refine_from() -> usize {
    5
}
fn d_delta() -> f64 {
    0.05
}
fn d_refine_change() -> f64 {
    0.01
}
fn d_b_factor() -> f64 {
    1.01
}
fn d_a_factor() -> f64 {
    1.2
}
fn d_im() -> Vec<f64> {
    vec![0.0]
}
fn d_rel_tol() -> f64 {
    1e-10
}
fn d_tail_tol() -> f64 {
    1e-12
}
fn d_nodes() -> usize {
    crate::bergman::DEFAULT_CONTOUR_NODES
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

fn resolution(name: &str, v: usize) -> Result<()> {
    if v >= 8 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be at least 8, got {v}")))
    }
}

impl SelectionConfig {
    fn validate(&self) -> Result<()> {
        resolution("selection.grid", self.grid)?;
        positive("selection.delta", self.delta)?;
        positive("selection.max_refine_change", self.max_refine_change)?;
        if self.refine_from == 0 {
            return Err(Error::Config("selection.refine_from must be at least 1".into()));
        }
        Ok(())
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let c: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(c) = &self.certify {
            positive("certify.mu", c.mu)?;
            positive("certify.tol", c.tol)?;
            resolution("certify.n_samples", c.n_samples)?;
            if c.neighborhood_grid != 0 {
                resolution("certify.neighborhood_grid", c.neighborhood_grid)?;
            }
            for (n, v) in [("certify.mu_prime", c.mu_prime), ("certify.c_plus", c.c_plus), ("certify.c_minus", c.c_minus)] {
                if let Some(v) = v {
                    positive(n, v)?;
                }
            }
            if c.c_plus.is_some() != c.c_minus.is_some() {
                return Err(Error::Config("give both certify.c_plus and certify.c_minus or neither".into()));
            }
            if c.profile != ProfileKind::TwoSided
                && (c.b_factor.is_some() || c.a_factor.is_some() || c.c_plus.is_some() || c.selection.is_some())
            {
                return Err(Error::Config("b_factor, a_factor, c_plus, c_minus and selection need profile = \"two_sided\"".into()));
            }
            if let Some(s) = &c.selection {
                s.validate()?;
            }
        }
        if let Some(c) = &self.select {
            positive("select.mu", c.mu)?;
            positive("select.b_factor", c.b_factor)?;
            positive("select.a_factor", c.a_factor)?;
            if let Some(s) = &c.selection {
                s.validate()?;
            }
        }
        if let Some(c) = &self.kernel {
            positive("kernel.mu", c.mu)?;
            positive("kernel.rel_tol", c.rel_tol)?;
            positive("kernel.tail_tol", c.tail_tol)?;
            if c.re_d.is_empty() || c.im_d.is_empty() {
                return Err(Error::Config("kernel.re_d and kernel.im_d must be nonempty".into()));
            }
            if c.re_d.iter().chain(&c.im_d).any(|x| !x.is_finite()) {
                return Err(Error::Config("kernel grid values must be finite".into()));
            }
        }
        if let Some(c) = &self.norms {
            positive("norms.mu", c.mu)?;
            if c.mc_samples != 0 && c.mc_samples < 8 {
                return Err(Error::Config("norms.mc_samples must be 0 or at least 8".into()));
            }
            for r in &c.rows {
                if let Some(m) = r.mu {
                    positive("norms.rows.mu", m)?;
                }
                if !(r.a.is_finite() && r.b.is_finite()) {
                    return Err(Error::Config("norms.rows a, b must be finite".into()));
                }
            }
        }
        if let Some(c) = &self.nebenhulle {
            positive("nebenhulle.mu", c.mu)?;
            resolution("nebenhulle.nodes", c.nodes)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(RunConfig::parse("[norms]\nmu = 1.0\nrows = []\nbogus = 1\n"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::parse("colour = 1\n"), Err(Error::Config(_))));
    }

    #[test]
    fn resolutions_and_tolerances() {
        assert!(RunConfig::parse("[nebenhulle]\nmu = 14.0\nnodes = 4\n").is_err());
        assert!(RunConfig::parse("[kernel]\nmu = 3.0\nre_d = [6.0]\nrel_tol = 0.0\n").is_err());
        let c = RunConfig::parse("[kernel]\nmu = 3.0\nre_d = [6, 8]\n").unwrap();
        assert_eq!(c.kernel.unwrap().re_d, vec![6.0, 8.0]);
    }

    #[test]
    fn two_sided_keys_need_the_two_sided_profile() {
        assert!(RunConfig::parse("[certify]\nprofile = \"zero\"\nmu = 3.2\nb_factor = 1.01\n").is_err());
        assert!(RunConfig::parse("[certify]\nprofile = \"two_sided\"\nmu = 3.2\nc_plus = 1.0\n").is_err());
    }
}
