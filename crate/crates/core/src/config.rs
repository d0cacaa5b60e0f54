//! Tolerances, caps and grid defaults.
//!
//! A config file is optional plain `key = value` text; `#` starts a comment.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Config {
    /// Maximum dense degree accepted by the Sturm positive-root oracle.
    pub sturm_degree_cap: u32,
    /// Maximum `#Γ` for the symbolic determinant in the shift variable.
    pub det_in_s_cap: usize,
    /// Root isolation width is `2^-root_width_log2`.
    pub root_width_log2: u32,
    /// Base step of the frame-bound grid on the unit `t`-interval.
    pub grid_step: f64,
    /// Number of 3x grid refinements around the minimizer.
    pub grid_refinements: u32,
    /// `lower < failure_threshold * upper` counts as numerical frame failure.
    pub failure_threshold: f64,
    /// `lower >= frame_threshold * upper` counts as a numerical frame when
    /// no exact certificate is available.
    pub frame_threshold: f64,
    /// Orthogonality tolerance accepted by the mollified frame ratio.
    pub orthogonality_tolerance: f64,
    /// Gauss–Legendre nodes per unit interval.
    pub quad_nodes_per_unit: usize,
    /// Default `|n|` range for residual checks.
    pub residual_n_range: i64,
    /// Sampling step of the witness interval search.
    pub witness_grid_step: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            sturm_degree_cap: 64,
            det_in_s_cap: 6,
            root_width_log2: 40,
            grid_step: 1.0 / 4096.0,
            grid_refinements: 2,
            failure_threshold: 1e-8,
            frame_threshold: 1e-6,
            orthogonality_tolerance: 1e-9,
            quad_nodes_per_unit: 64,
            residual_n_range: 8,
            witness_grid_step: 1.0 / 1024.0,
        }
    }
}

impl Config {
    pub fn from_key_values(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
        }
        match key {
            "sturm_degree_cap" => self.sturm_degree_cap = num(key, value)?,
            "det_in_s_cap" => self.det_in_s_cap = num(key, value)?,
            "root_width_log2" => self.root_width_log2 = num(key, value)?,
            "grid_step" => self.grid_step = num(key, value)?,
            "grid_refinements" => self.grid_refinements = num(key, value)?,
            "failure_threshold" => self.failure_threshold = num(key, value)?,
            "frame_threshold" => self.frame_threshold = num(key, value)?,
            "orthogonality_tolerance" => self.orthogonality_tolerance = num(key, value)?,
            "quad_nodes_per_unit" => self.quad_nodes_per_unit = num(key, value)?,
            "residual_n_range" => self.residual_n_range = num(key, value)?,
            "witness_grid_step" => self.witness_grid_step = num(key, value)?,
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        if !(self.grid_step > 0.0 && self.grid_step <= 1.0) {
            return Err(Error::Config("grid_step must lie in (0, 1]".into()));
        }
        if self.quad_nodes_per_unit == 0 {
            return Err(Error::Config("quad_nodes_per_unit must be positive".into()));
        }
        Ok(())
    }
}
