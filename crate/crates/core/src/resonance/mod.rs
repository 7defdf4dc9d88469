//! Resonance processes and their manifolds: closed-form and polynomial
//! charts, seeded sampling, billiard detection and CSV point dumps.

mod billiard;
mod chart;
mod csv;
mod process;
mod sample;

pub use billiard::detect_billiard;
pub use chart::{
    param_m1_kdvckdv, param_m3_nlskdv, solve_chart, ChartSelection, ChartSettings, ChartSolution,
    ChartSolver, ManifoldChart, PlusMinus,
};
pub use csv::write_points_csv;
pub use process::{ProcessId, ResonanceProcess, Sign, Wave};
pub use sample::{sample_manifold, sample_momentum_plane, Sample};

use serde::{Deserialize, Serialize};

/// Closed real interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_empty(&self) -> bool {
        !(self.lo <= self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Which solution of the chart produced a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchTag {
    Plus,
    Minus,
    Root(usize),
}

impl std::fmt::Display for BranchTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BranchTag::Plus => f.write_str("plus"),
            BranchTag::Minus => f.write_str("minus"),
            BranchTag::Root(i) => write!(f, "root{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifoldPoint {
    pub ks: Vec<f64>,
    pub residual_k: f64,
    pub residual_w: f64,
    pub branch_tag: BranchTag,
}

impl ManifoldPoint {
    pub fn max_residual(&self) -> f64 {
        self.residual_k.abs().max(self.residual_w.abs())
    }
}
