//! Whole-system analyses: every built-in process of a system is sampled, its
//! interaction coefficient checked for vanishing and its manifold classified,
//! and the findings are folded into one verdict.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coefficients::{evaluate, CoefficientSettings, CoefficientStatus, KernelId};
use crate::config::Config;
use crate::degeneracy::{degeneracy_of_sample, DegeneracyReport, ManifoldStatus, RankVerdict};
use crate::dispersion::{SpecialFlags, SystemId, SystemParams, WaveSystem};
use crate::error::{Error, Result};
use crate::resonance::{
    sample_manifold, sample_momentum_plane, ChartSelection, Interval, ManifoldChart, ManifoldPoint,
    ProcessId,
};

pub const SCHEMA_VERSION: u32 = 1;

const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientFinding {
    VanishesOnManifold,
    Nonzero,
    NotAvailable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Implication {
    None,
    BlocksCompleteIntegrability,
    BlocksIstSolvability,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    Nonintegrable,
    SpecialCaseOpen,
    NoObstructionFound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionFinding {
    pub process: String,
    pub manifold_status: ManifoldStatus,
    pub coefficient: Option<KernelId>,
    pub coefficient_status: CoefficientFinding,
    /// Largest finite |coefficient| over the sample.
    pub max_abs_coefficient: Option<f64>,
    pub coefficient_poles: usize,
    pub degeneracy: Option<RankVerdict>,
    pub implication: Implication,
    pub detail: DegeneracyReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrabilityReport {
    pub schema: u32,
    pub system: SystemId,
    pub params: SystemParams,
    pub flags: SpecialFlags,
    pub seed: u64,
    pub findings: Vec<ObstructionFinding>,
    pub overall: Overall,
}

impl IntegrabilityReport {
    pub fn has_inconclusive(&self) -> bool {
        self.findings
            .iter()
            .any(|f| f.degeneracy == Some(RankVerdict::Inconclusive))
    }

    pub fn finding(&self, id: ProcessId) -> Option<&ObstructionFinding> {
        self.findings.iter().find(|f| f.process == id.name())
    }
}

/// The interaction coefficient attached to a process, where one is printed.
/// Three-wave processes use their cubic kernel.
pub fn coefficient_for(id: ProcessId) -> Option<KernelId> {
    match id {
        ProcessId::NlsM1 => Some(KernelId::UNls),
        ProcessId::NlsM2 => Some(KernelId::VNls),
        ProcessId::NlsM3 => Some(KernelId::TNls),
        ProcessId::CkM1 => Some(KernelId::VCk),
        ProcessId::CkM2 | ProcessId::CkM3 => Some(KernelId::UCk),
        ProcessId::CkCal1 => Some(KernelId::T1Ck),
        ProcessId::CkCal2 | ProcessId::CkCal3 | ProcessId::CkCal4 | ProcessId::CkCal5 => None,
    }
}

/// Nonzero coefficient on a nonempty manifold blocks complete integrability;
/// if the manifold is also nondegenerate it blocks solvability by IST.
pub fn implication(
    status: ManifoldStatus,
    coefficient: CoefficientFinding,
    degeneracy: Option<RankVerdict>,
) -> Implication {
    if status == ManifoldStatus::Empty || coefficient != CoefficientFinding::Nonzero {
        Implication::None
    } else if degeneracy == Some(RankVerdict::NondegenerateRank2) {
        Implication::BlocksIstSolvability
    } else {
        Implication::BlocksCompleteIntegrability
    }
}

pub fn overall_verdict(system: &WaveSystem, findings: &[ObstructionFinding]) -> Overall {
    let any = |i: Implication| findings.iter().any(|f| f.implication == i);
    if any(Implication::BlocksIstSolvability) {
        Overall::Nonintegrable
    } else if system.id == SystemId::KdvCkdv && system.flags.special_case() {
        Overall::SpecialCaseOpen
    } else if any(Implication::BlocksCompleteIntegrability) {
        Overall::Nonintegrable
    } else {
        Overall::NoObstructionFound
    }
}

fn coefficient_on(
    kernel: KernelId,
    points: &[ManifoldPoint],
    params: SystemParams,
    cfg: &Config,
) -> Result<(CoefficientFinding, Option<f64>, usize)> {
    let settings = CoefficientSettings::from_config(cfg);
    let mut max_abs: Option<f64> = None;
    let mut poles = 0;
    for p in points {
        let v = evaluate(kernel, &p.ks, params, &settings)?;
        if v.status == CoefficientStatus::Pole {
            poles += 1;
        } else {
            max_abs = Some(max_abs.unwrap_or(0.0).max(v.value.abs()));
        }
    }
    let status = if max_abs.is_some_and(|m| m > cfg.coeff_zero_tol) {
        CoefficientFinding::Nonzero
    } else {
        CoefficientFinding::VanishesOnManifold
    };
    Ok((status, max_abs, poles))
}

/// Sampling, coefficient check and degeneracy verdict for one process.
pub fn analyze_process(
    id: ProcessId,
    system: &WaveSystem,
    cfg: &Config,
) -> Result<ObstructionFinding> {
    let process = id.process();
    let (points, detail) = match ManifoldChart::select(&process, system, cfg)? {
        ChartSelection::FullManifold => {
            let domain = Interval::new(cfg.domain[0], cfg.domain[1]);
            let points =
                sample_momentum_plane(&process, system, domain, cfg.k_min, cfg.points, cfg.seed);
            let detail = DegeneracyReport {
                process: process.name().to_string(),
                manifold_status: ManifoldStatus::Full,
                points: points.len(),
                sample_warning: None,
                billiard_fraction: None,
                web: None,
                tied: None,
                verdict: Some(RankVerdict::DegenerateRank3Plus),
            };
            (points, detail)
        }
        ChartSelection::Chart(chart) => {
            let sample = sample_manifold(&chart, cfg.points, cfg.seed);
            let mut detail = degeneracy_of_sample(&process, system, &sample.points, cfg)?;
            detail.sample_warning = sample.warning;
            (sample.points, detail)
        }
    };
    let kernel = coefficient_for(id);
    let (coefficient_status, max_abs_coefficient, coefficient_poles) = match kernel {
        Some(k) => coefficient_on(k, &points, system.params, cfg)?,
        None => (CoefficientFinding::NotAvailable, None, 0),
    };
    let status = detail.manifold_status;
    let degeneracy = detail.verdict;
    Ok(ObstructionFinding {
        process: id.name().to_string(),
        manifold_status: status,
        coefficient: kernel,
        coefficient_status,
        max_abs_coefficient,
        coefficient_poles,
        degeneracy,
        implication: implication(status, coefficient_status, degeneracy),
        detail,
    })
}

/// Seed used for the `index`-th process of a system.
pub fn process_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64).wrapping_mul(SEED_STRIDE))
}

/// Runs every built-in process of a built-in system. Deterministic for a
/// fixed configuration.
pub fn analyze(system: &WaveSystem, cfg: &Config) -> Result<IntegrabilityReport> {
    cfg.validate()?;
    if system.id == SystemId::Custom {
        return Err(Error::Argument("analyze needs a built-in system".into()));
    }
    let ids = ProcessId::for_system(system.id);
    let findings = ids
        .par_iter()
        .enumerate()
        .map(|(i, &id)| {
            let local = Config {
                seed: process_seed(cfg.seed, i),
                ..cfg.clone()
            };
            analyze_process(id, system, &local)
        })
        .collect::<Result<Vec<_>>>()?;
    let overall = overall_verdict(system, &findings);
    Ok(IntegrabilityReport {
        schema: SCHEMA_VERSION,
        system: system.id,
        params: system.params,
        flags: system.flags,
        seed: cfg.seed,
        findings,
        overall,
    })
}

/// `n` evenly spaced values from `lo` to `hi`, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n == 0 || !(lo.is_finite() && hi.is_finite()) || (n > 1 && !(hi > lo)) {
            return Err(Error::Argument(format!("bad grid axis {lo}:{hi}:{n}")));
        }
        Ok(Self { lo, hi, n })
    }

    /// Parses `LO:HI:N`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let bad = || Error::Argument(format!("expected LO:HI:N, got `{text}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo = parts[0].trim().parse().map_err(|_| bad())?;
        let hi = parts[1].trim().parse().map_err(|_| bad())?;
        let n = parts[2].trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi, n)
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.n == 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / (self.n - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.value(i)).collect()
    }

    pub fn step(&self) -> f64 {
        if self.n > 1 {
            (self.hi - self.lo) / (self.n - 1) as f64
        } else {
            0.0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub alpha: f64,
    pub gamma: f64,
    pub overall: Overall,
    /// Four-wave processes whose manifold came out degenerate or billiard.
    pub degenerate: Vec<String>,
    pub inconclusive: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: u32,
    pub beta: f64,
    pub alpha: GridAxis,
    pub gamma: GridAxis,
    pub points_per_manifold: usize,
    pub seed: u64,
    /// Row-major in `alpha`, then `gamma`.
    pub cells: Vec<ScanCell>,
}

impl ScanReport {
    pub fn cell(&self, i: usize, j: usize) -> &ScanCell {
        &self.cells[i * self.gamma.n + j]
    }
}

/// KdV-CKdV verdicts over an `(alpha, gamma)` grid at fixed `beta`, each cell
/// analyzed with `cfg.scan_points` points per manifold.
pub fn scan_params(
    alpha: GridAxis,
    gamma: GridAxis,
    beta: f64,
    cfg: &Config,
) -> Result<ScanReport> {
    if alpha.n * gamma.n < 9 {
        return Err(Error::Argument(format!(
            "a scan needs at least 9 cells, got {}",
            alpha.n * gamma.n
        )));
    }
    let local = Config {
        points: cfg.scan_points,
        ..cfg.clone()
    };
    let cells = (0..alpha.n * gamma.n)
        .into_par_iter()
        .map(|c| {
            let (a, g) = (alpha.value(c / gamma.n), gamma.value(c % gamma.n));
            let system = WaveSystem::kdv_ckdv(SystemParams::new(a, beta, g));
            let report = analyze(&system, &local)?;
            let names = |pred: &dyn Fn(&ObstructionFinding) -> bool| {
                report
                    .findings
                    .iter()
                    .filter(|f| pred(f))
                    .map(|f| f.process.clone())
                    .collect::<Vec<_>>()
            };
            Ok(ScanCell {
                alpha: a,
                gamma: g,
                overall: report.overall,
                degenerate: names(&|f| {
                    f.process.starts_with("ck-cal")
                        && f.degeneracy.is_some_and(RankVerdict::is_degenerate)
                }),
                inconclusive: names(&|f| f.degeneracy == Some(RankVerdict::Inconclusive)),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        schema: SCHEMA_VERSION,
        beta,
        alpha,
        gamma,
        points_per_manifold: local.points,
        seed: cfg.seed,
        cells,
    })
}

/// Pretty JSON with a trailing newline.
pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    write_json(&mut buf, value)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}
