//! Degeneracy of resonance manifolds through the dimension of the space of
//! relations `sum_j f_j(k_j) = const` that hold on a manifold sample.
//!
//! Web mode allows one function per wave, tied mode one per dispersion
//! branch. Momentum and frequency conservation always give two relations;
//! a third one means the manifold is degenerate.

mod basis;
mod collocation;
mod rank;

pub use basis::{BasisKind, FunctionBasis};
pub use collocation::{build_collocation, min_points, CollocationMatrix, Mode};
pub use rank::{rank_analyze, AbelianRelation, KnownCheck, RankReport, RankSettings, RankVerdict};

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::dispersion::WaveSystem;
use crate::error::Result;
use crate::resonance::{
    detect_billiard, sample_manifold, ChartSelection, ManifoldChart, ManifoldPoint,
    ResonanceProcess,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifoldStatus {
    Empty,
    /// Every momentum-conserving tuple is resonant.
    Full,
    Billiard,
    Generic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub process: String,
    pub manifold_status: ManifoldStatus,
    pub points: usize,
    pub sample_warning: Option<String>,
    pub billiard_fraction: Option<f64>,
    pub web: Option<RankReport>,
    pub tied: Option<RankReport>,
    /// `None` for an empty manifold.
    pub verdict: Option<RankVerdict>,
}

/// Rank report for one mode on a given sample.
pub fn analyze_mode(
    points: &[ManifoldPoint],
    process: &ResonanceProcess,
    system: &WaveSystem,
    cfg: &Config,
    mode: Mode,
) -> Result<RankReport> {
    let m = build_collocation(points, process, cfg.basis, cfg.degree, mode)?;
    let known = m.known_relations(system)?;
    rank_analyze(&m, &known, &RankSettings::from_config(cfg))
}

/// Both modes agree or one finds a conclusive extra relation.
pub fn combine_verdicts(reports: &[&RankReport]) -> RankVerdict {
    if reports.iter().any(|r| r.conclusive && r.n_beyond_known > 0) {
        RankVerdict::DegenerateRank3Plus
    } else if !reports.is_empty() && reports.iter().all(|r| r.conclusive) {
        RankVerdict::NondegenerateRank2
    } else {
        RankVerdict::Inconclusive
    }
}

pub fn degeneracy_of_sample(
    process: &ResonanceProcess,
    system: &WaveSystem,
    points: &[ManifoldPoint],
    cfg: &Config,
) -> Result<DegeneracyReport> {
    let mut report = DegeneracyReport {
        process: process.name().to_string(),
        manifold_status: ManifoldStatus::Generic,
        points: points.len(),
        sample_warning: None,
        billiard_fraction: None,
        web: None,
        tied: None,
        verdict: None,
    };
    if points.is_empty() {
        report.manifold_status = ManifoldStatus::Empty;
        return Ok(report);
    }
    if process.arity() == 4 {
        let fraction = detect_billiard(points, process, system, cfg.billiard_tol)?;
        report.billiard_fraction = Some(fraction);
        if fraction == 1.0 {
            report.manifold_status = ManifoldStatus::Billiard;
            report.verdict = Some(RankVerdict::BilliardInfiniteRank);
            return Ok(report);
        }
    }
    if points.len() < min_points(cfg.degree) {
        report.verdict = Some(RankVerdict::Inconclusive);
        return Ok(report);
    }
    let tied = analyze_mode(points, process, system, cfg, Mode::Tied)?;
    let web = if process.arity() == 4 {
        Some(analyze_mode(points, process, system, cfg, Mode::Web)?)
    } else {
        None
    };
    let mut all = vec![&tied];
    all.extend(web.as_ref());
    report.verdict = Some(combine_verdicts(&all));
    report.tied = Some(tied);
    report.web = web;
    Ok(report)
}

/// Samples the manifold (`cfg.points` points, `cfg.seed`) and classifies it.
/// A full manifold is degenerate without further analysis.
pub fn degeneracy_verdict(
    process: &ResonanceProcess,
    system: &WaveSystem,
    cfg: &Config,
) -> Result<DegeneracyReport> {
    match ManifoldChart::select(process, system, cfg)? {
        ChartSelection::FullManifold => Ok(DegeneracyReport {
            process: process.name().to_string(),
            manifold_status: ManifoldStatus::Full,
            points: 0,
            sample_warning: None,
            billiard_fraction: None,
            web: None,
            tied: None,
            verdict: Some(RankVerdict::DegenerateRank3Plus),
        }),
        ChartSelection::Chart(chart) => {
            let sample = sample_manifold(&chart, cfg.points, cfg.seed);
            let mut report = degeneracy_of_sample(process, system, &sample.points, cfg)?;
            report.sample_warning = sample.warning;
            Ok(report)
        }
    }
}
