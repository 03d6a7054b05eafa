//! Run configuration read from a TOML file with one section per subcommand.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub verify: VerifyConfig,
    pub solve: SolveConfig,
    pub fuchsian: FuchsianConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    /// Any of "algebra", "ein", "g2", "fuchsian".
    pub suites: Vec<String>,
    pub samples: usize,
    /// Float tolerance for the residual checks.
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Instance {
    /// σ = 1/(2y^2) on a rectangle, q = 0.
    Hyperbolic,
    /// The same rectangle with q(z) = eps (z - z0).
    Holomorphic,
    /// Flat torus with constant |q|^2_σ = c.
    Flat,
    /// Flat torus with |q|^2_σ = c (1 + amplitude sin x cos y).
    Synthetic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveConfig {
    pub instance: Instance,
    pub n: usize,
    pub x_range: [f64; 2],
    pub y_range: [f64; 2],
    pub c: f64,
    pub eps: f64,
    pub z0: [f64; 2],
    pub amplitude: f64,
    /// Interior nodes start uniformly in [-init, init].
    pub init: f64,
    pub tol: f64,
    pub max_iter: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FuchsianConfig {
    pub x: f64,
    pub y: f64,
    pub r: f64,
    pub n_theta: usize,
    pub n_alpha: usize,
    pub sextic_samples: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub null_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, verify: VerifyConfig::default(), solve: SolveConfig::default(), fuchsian: FuchsianConfig::default() }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { suites: ["algebra", "ein", "g2", "fuchsian"].map(String::from).to_vec(), samples: 50, tol: 1e-10 }
    }
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            instance: Instance::Hyperbolic,
            n: 64,
            x_range: [-0.5, 0.5],
            y_range: [1.0, 2.0],
            c: 1.0,
            eps: 2e-3,
            z0: [0.0, 1.5],
            amplitude: 0.3,
            init: 1.0,
            tol: 1e-11,
            max_iter: 30,
        }
    }
}

impl Default for FuchsianConfig {
    fn default() -> Self {
        FuchsianConfig { x: 0.0, y: 1.0, r: 1.0, n_theta: 12, n_alpha: 12, sextic_samples: 20, t_min: 0.05, t_max: 20.0, t_steps: 81, null_tol: 1e-12 }
    }
}

pub const SUITES: [&str; 4] = ["algebra", "ein", "g2", "fuchsian"];

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if let Some(s) = self.verify.suites.iter().find(|s| !SUITES.contains(&s.as_str())) {
            return bad(format!("unknown suite {s:?}"));
        }
        if !(self.verify.tol >= 0.0) {
            return bad("verify.tol must be non-negative".into());
        }
        let s = &self.solve;
        if s.n < 3 {
            return bad("solve.n must be at least 3".into());
        }
        if !(s.tol > 0.0) {
            return bad("solve.tol must be positive".into());
        }
        if !(s.y_range[0] > 0.0 && s.y_range[1] > s.y_range[0] && s.x_range[1] > s.x_range[0]) {
            return bad("solve ranges must describe a rectangle in the upper half plane".into());
        }
        if matches!(s.instance, Instance::Flat | Instance::Synthetic) && !(s.c > 0.0) {
            return bad("solve.c must be positive".into());
        }
        let f = &self.fuchsian;
        if !(f.y > 0.0 && f.r > 0.0) {
            return bad("fuchsian.y and fuchsian.r must be positive".into());
        }
        if !(f.t_min > 0.0 && f.t_max > f.t_min) || f.t_steps < 2 {
            return bad("fuchsian t-grid must be a positive increasing range with at least 2 steps".into());
        }
        if !(f.null_tol > 0.0) {
            return bad("fuchsian.null_tol must be positive".into());
        }
        Ok(())
    }
}

/// SHA-256 of the configuration text, hex encoded.
pub fn config_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}
