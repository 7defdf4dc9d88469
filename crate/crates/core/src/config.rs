//! Tolerances, domains and basis settings, loadable from a flat key-value
//! (TOML) file. Every field has a default, so a file only lists overrides.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::degeneracy::BasisKind;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Maximum |momentum| and |frequency| mismatch of an accepted manifold point.
    pub tol_res: f64,
    /// Real roots closer than this are merged.
    pub merge_tol: f64,
    /// Pairing tolerance for billiard detection.
    pub billiard_tol: f64,
    /// Points with a wavenumber of magnitude below this are resampled.
    pub k_min: f64,
    /// Solved wavenumbers must satisfy |k| <= k_max.
    pub k_max: f64,
    /// Sampling box for each free wavenumber.
    pub domain: [f64; 2],
    /// Sampling gives up after `count * max_attempts_per_point` draws.
    pub max_attempts_per_point: usize,

    pub eps_den: f64,
    pub eps_num: f64,
    /// |coefficient| above this on some sample counts as "nonzero on the manifold".
    pub coeff_zero_tol: f64,

    pub basis: BasisKind,
    pub degree: usize,
    pub points: usize,
    pub rank_tol: f64,
    pub gap_factor: f64,
    pub projection_tol: f64,

    /// Points per manifold in parameter scans.
    pub scan_points: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol_res: 1e-10,
            merge_tol: 1e-9,
            billiard_tol: 1e-9,
            k_min: 1e-3,
            k_max: 50.0,
            domain: [-5.0, 5.0],
            max_attempts_per_point: 200,
            eps_den: 1e-8,
            eps_num: 1e-10,
            coeff_zero_tol: 1e-10,
            basis: BasisKind::Chebyshev,
            degree: 8,
            points: 2000,
            rank_tol: 1e-8,
            gap_factor: 1e3,
            projection_tol: 1e-6,
            scan_points: 400,
            seed: 7,
        }
    }
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("tol_res", self.tol_res),
            ("merge_tol", self.merge_tol),
            ("billiard_tol", self.billiard_tol),
            ("k_max", self.k_max),
            ("eps_den", self.eps_den),
            ("eps_num", self.eps_num),
            ("rank_tol", self.rank_tol),
            ("gap_factor", self.gap_factor),
            ("projection_tol", self.projection_tol),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.k_min >= 0.0 && self.k_min < self.k_max) {
            return Err(Error::Config("need 0 <= k_min < k_max".into()));
        }
        if !(self.domain[0] < self.domain[1]) {
            return Err(Error::Config(format!("empty domain {:?}", self.domain)));
        }
        if self.degree < 2 {
            return Err(Error::Config("basis degree must be at least 2".into()));
        }
        if self.points == 0 || self.scan_points == 0 || self.max_attempts_per_point == 0 {
            return Err(Error::Config("point counts must be positive".into()));
        }
        Ok(())
    }
}
