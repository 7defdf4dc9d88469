use serde::{Deserialize, Serialize};

use super::{BranchTag, Interval, ManifoldPoint, ProcessId, ResonanceProcess};
use crate::config::Config;
use crate::dispersion::{mismatch_unchecked, SystemId, SystemParams, WaveSystem};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::roots::real_roots;

/// Coefficients below this fraction of the largest contributing term are
/// rounding residue of the elimination.
const ELIMINATION_REL_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartSettings {
    pub tol_res: f64,
    pub merge_tol: f64,
    pub k_min: f64,
    pub max_attempts_per_point: usize,
}

impl ChartSettings {
    pub fn from_config(cfg: &Config) -> Self {
        Self {
            tol_res: cfg.tol_res,
            merge_tol: cfg.merge_tol,
            k_min: cfg.k_min,
            max_attempts_per_point: cfg.max_attempts_per_point,
        }
    }
}

impl Default for ChartSettings {
    fn default() -> Self {
        Self::from_config(&Config::default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartSolver {
    ClosedFormNlsKdvM3,
    ClosedFormKdvCkdvM1,
    GenericPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlusMinus {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChartSolution {
    Points(Vec<ManifoldPoint>),
    /// The frequency constraint is implied by the momentum constraint: every
    /// momentum-conserving tuple is resonant.
    FullManifold,
}

fn point(
    process: &ResonanceProcess,
    system: &WaveSystem,
    ks: Vec<f64>,
    tag: BranchTag,
) -> ManifoldPoint {
    let (residual_k, residual_w) = mismatch_unchecked(process, system, &ks);
    ManifoldPoint {
        ks,
        residual_k,
        residual_w,
        branch_tag: tag,
    }
}

/// Closed-form chart of the NLS-KdV four-wave manifold over `(k2, k4)`.
pub fn param_m3_nlskdv(k2: f64, k4: f64) -> ManifoldPoint {
    let q = -k2 * k2 - k2 * k4 - k4 * k4;
    let k1 = 0.5 * (q + k4 - k2);
    // Same value as (q + k2 - k4) / 2, rounded so that k1 - k3 stays close to
    // k4 - k2; the frequency residual scales with |k1| times that error.
    let k3 = k1 - (k4 - k2);
    // The NLS-KdV laws carry no parameters.
    let system = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    point(
        &ProcessId::NlsM3.process(),
        &system,
        vec![k1, k2, k3, k4],
        BranchTag::Root(0),
    )
}

/// Closed-form chart of the KdV-CKdV four-wave manifold
/// `k1 = k2+k3+k4, om1 = Om2+om3+Om4` over `(k2, k4)`.
///
/// With `d = k2 + k4` and `s = k1 + k3`, the manifold is `k1 - k3 = d` and
/// `3 alpha s^2 = B`, where
/// `B = 4 beta - (k2^2+k4^2)(alpha - 4 gamma) - 2 k2 k4 (alpha + 2 gamma)`.
/// Returns `None` where `B / (3 alpha) < 0`. This chart misses the plane
/// `{k2 = -k4, k1 = k3}`, which lies on the manifold for every parameter set.
pub fn param_m1_kdvckdv(
    k2: f64,
    k4: f64,
    params: SystemParams,
    branch: PlusMinus,
) -> Result<Option<ManifoldPoint>> {
    let SystemParams { alpha, beta, gamma } = params;
    if alpha == 0.0 {
        return Err(Error::Argument(
            "alpha = 0 has no closed-form chart; use the polynomial chart".into(),
        ));
    }
    let bracket = 4.0 * beta
        - (k2 * k2 + k4 * k4) * (alpha - 4.0 * gamma)
        - 2.0 * k2 * k4 * (alpha + 2.0 * gamma);
    let radicand = bracket / (3.0 * alpha);
    if !(radicand >= 0.0) {
        return Ok(None);
    }
    let root = radicand.sqrt();
    let (s, tag) = match branch {
        PlusMinus::Plus => (root, BranchTag::Plus),
        PlusMinus::Minus => (-root, BranchTag::Minus),
    };
    let d = k2 + k4;
    let k1 = 0.5 * (d + s);
    let k3 = 0.5 * (s - d);
    let system = WaveSystem::kdv_ckdv(params);
    Ok(Some(point(
        &ProcessId::CkCal1.process(),
        &system,
        vec![k1, k2, k3, k4],
        tag,
    )))
}

/// Eliminates the first unsolved wavenumber with the momentum constraint and
/// returns the frequency mismatch as a polynomial in the second, already
/// cleaned of cancellation residue. Also returns the affine map giving the
/// eliminated wavenumber.
fn elimination_polynomial(
    process: &ResonanceProcess,
    system: &WaveSystem,
    free: &[(usize, f64)],
    eliminated: usize,
    variable: usize,
) -> (Polynomial, (f64, f64)) {
    let waves = process.waves();
    let (mut s_free, mut w_free) = (0.0, 0.0);
    for &(j, k) in free {
        let s = waves[j].sign.value();
        s_free += s * k;
        w_free += s * system.frequency(waves[j].branch, k);
    }
    let sa = waves[eliminated].sign.value();
    let sb = waves[variable].sign.value();
    // sa*k_a + sb*k_b + s_free = 0
    let c0 = -sa * s_free;
    let c1 = -sa * sb;
    let pa = system
        .law(waves[eliminated].branch)
        .polynomial()
        .compose_linear(c0, c1)
        .scale(sa);
    let pb = system.law(waves[variable].branch).polynomial().scale(sb);
    let total = &(&pa + &pb) + &Polynomial::constant(w_free);

    let max_abs = |p: &Polynomial| p.coeffs().iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let reference = max_abs(&pa).max(max_abs(&pb)).max(w_free.abs());
    let cutoff = ELIMINATION_REL_TOL * reference;
    let mut coeffs = total.coeffs().to_vec();
    while coeffs.last().is_some_and(|c| c.abs() <= cutoff) {
        coeffs.pop();
    }
    (Polynomial::new(coeffs), (c0, c1))
}

fn unsolved_indices(arity: usize, free: &[usize]) -> Result<(usize, usize)> {
    let rest: Vec<usize> = (0..arity).filter(|i| !free.contains(i)).collect();
    let mut sorted = free.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if rest.len() != 2 || sorted.len() != free.len() || free.iter().any(|&i| i >= arity) {
        return Err(Error::Argument(format!(
            "need exactly {} distinct free indices below {arity}, got {free:?}",
            arity.saturating_sub(2)
        )));
    }
    Ok((rest[0], rest[1]))
}

fn solve_generic(
    process: &ResonanceProcess,
    system: &WaveSystem,
    free: &[(usize, f64)],
    unsolved: (usize, usize),
    settings: &ChartSettings,
) -> ChartSolution {
    let (a, b) = unsolved;
    let (poly, (c0, c1)) = elimination_polynomial(process, system, free, a, b);
    if poly.is_zero() {
        return ChartSolution::FullManifold;
    }
    let mut out = Vec::new();
    for (i, kb) in real_roots(&poly, settings.merge_tol)
        .into_iter()
        .enumerate()
    {
        let mut ks = vec![0.0; process.arity()];
        for &(j, k) in free {
            ks[j] = k;
        }
        ks[b] = kb;
        ks[a] = c0 + c1 * kb;
        let p = point(process, system, ks, BranchTag::Root(i));
        if p.max_residual() <= settings.tol_res {
            out.push(p);
        }
    }
    ChartSolution::Points(out)
}

/// Solves the resonance conditions for the two wavenumbers not fixed by
/// `free_assignment`. Every returned point meets `settings.tol_res`.
pub fn solve_chart(
    process: &ResonanceProcess,
    system: &WaveSystem,
    free_assignment: &[(usize, f64)],
    settings: &ChartSettings,
) -> Result<ChartSolution> {
    let free: Vec<usize> = free_assignment.iter().map(|&(i, _)| i).collect();
    let unsolved = unsolved_indices(process.arity(), &free)?;
    Ok(solve_generic(
        process,
        system,
        free_assignment,
        unsolved,
        settings,
    ))
}

#[derive(Clone, Debug)]
pub enum ChartSelection {
    Chart(Box<ManifoldChart>),
    FullManifold,
}

/// A parameterization of a resonance manifold by `arity - 2` free wavenumbers.
#[derive(Clone, Debug)]
pub struct ManifoldChart {
    process: ResonanceProcess,
    system: WaveSystem,
    free_indices: Vec<usize>,
    domain: Vec<Interval>,
    solved_range: Interval,
    solver: ChartSolver,
    settings: ChartSettings,
}

const PROBES: [(f64, f64); 4] = [(0.713, -1.37), (-1.37, 2.19), (2.19, -0.41), (-0.41, 0.713)];

fn free_candidates(arity: usize) -> Vec<Vec<usize>> {
    match arity {
        3 => vec![vec![1], vec![2], vec![0]],
        _ => vec![
            vec![1, 3],
            vec![2, 3],
            vec![0, 3],
            vec![1, 2],
            vec![0, 2],
            vec![0, 1],
        ],
    }
}

enum Usability {
    Usable,
    Full,
    Unusable,
}

fn probe(process: &ResonanceProcess, system: &WaveSystem, free: &[usize]) -> Usability {
    let unsolved = match unsolved_indices(process.arity(), free) {
        Ok(u) => u,
        Err(_) => return Usability::Unusable,
    };
    let mut all_zero = true;
    for &(x, y) in &PROBES {
        let values = [x, y];
        let assignment: Vec<(usize, f64)> = free.iter().zip(values).map(|(&i, v)| (i, v)).collect();
        let (poly, _) =
            elimination_polynomial(process, system, &assignment, unsolved.0, unsolved.1);
        match poly.degree() {
            Some(d) if d >= 1 => return Usability::Usable,
            Some(_) => all_zero = false,
            None => {}
        }
    }
    if all_zero {
        Usability::Full
    } else {
        Usability::Unusable
    }
}

impl ManifoldChart {
    /// Picks the chart used for a process: the closed forms where they apply,
    /// otherwise the polynomial chart over the first usable free set, trying
    /// `(k2, k4)` first.
    pub fn select(
        process: &ResonanceProcess,
        system: &WaveSystem,
        cfg: &Config,
    ) -> Result<ChartSelection> {
        let default_domain = Interval::new(cfg.domain[0], cfg.domain[1]);
        let build = |free: Vec<usize>, solver| ManifoldChart {
            process: process.clone(),
            system: system.clone(),
            domain: vec![default_domain; free.len()],
            free_indices: free,
            solved_range: Interval::new(-cfg.k_max, cfg.k_max),
            solver,
            settings: ChartSettings::from_config(cfg),
        };
        let same = |id: ProcessId| process.waves() == id.process().waves();
        if system.id == SystemId::NlsKdv && same(ProcessId::NlsM3) {
            return Ok(ChartSelection::Chart(Box::new(build(
                vec![1, 3],
                ChartSolver::ClosedFormNlsKdvM3,
            ))));
        }
        if system.id == SystemId::KdvCkdv && same(ProcessId::CkCal1) && system.params.alpha != 0.0 {
            return Ok(ChartSelection::Chart(Box::new(build(
                vec![1, 3],
                ChartSolver::ClosedFormKdvCkdvM1,
            ))));
        }
        let candidates = free_candidates(process.arity());
        for free in &candidates {
            match probe(process, system, free) {
                Usability::Usable => {
                    return Ok(ChartSelection::Chart(Box::new(build(
                        free.clone(),
                        ChartSolver::GenericPoly,
                    ))))
                }
                Usability::Full => return Ok(ChartSelection::FullManifold),
                Usability::Unusable => {}
            }
        }
        // Generically empty for every choice; keep the preferred one so that
        // sampling reports the empty manifold.
        Ok(ChartSelection::Chart(Box::new(build(
            candidates[0].clone(),
            ChartSolver::GenericPoly,
        ))))
    }

    /// Polynomial chart over an explicit free set.
    pub fn generic(
        process: &ResonanceProcess,
        system: &WaveSystem,
        free_indices: Vec<usize>,
        cfg: &Config,
    ) -> Result<Self> {
        unsolved_indices(process.arity(), &free_indices)?;
        let d = Interval::new(cfg.domain[0], cfg.domain[1]);
        Ok(Self {
            process: process.clone(),
            system: system.clone(),
            domain: vec![d; free_indices.len()],
            free_indices,
            solved_range: Interval::new(-cfg.k_max, cfg.k_max),
            solver: ChartSolver::GenericPoly,
            settings: ChartSettings::from_config(cfg),
        })
    }

    pub fn with_domain(mut self, domain: Vec<Interval>) -> Result<Self> {
        if domain.len() != self.free_indices.len() {
            return Err(Error::Argument(format!(
                "chart has {} free variables, got {} intervals",
                self.free_indices.len(),
                domain.len()
            )));
        }
        self.domain = domain;
        Ok(self)
    }

    /// Range every solved (non-free) wavenumber must fall in.
    pub fn with_solved_range(mut self, range: Interval) -> Self {
        self.solved_range = range;
        self
    }

    pub fn process(&self) -> &ResonanceProcess {
        &self.process
    }

    pub fn system(&self) -> &WaveSystem {
        &self.system
    }

    pub fn free_indices(&self) -> &[usize] {
        &self.free_indices
    }

    pub fn domain(&self) -> &[Interval] {
        &self.domain
    }

    pub fn solved_range(&self) -> Interval {
        self.solved_range
    }

    pub fn solver(&self) -> ChartSolver {
        self.solver
    }

    pub fn settings(&self) -> &ChartSettings {
        &self.settings
    }

    /// Points over one assignment of the free variables (in `free_indices`
    /// order). Domain and range filters are not applied here.
    pub fn solve(&self, free_values: &[f64]) -> ChartSolution {
        match self.solver {
            ChartSolver::ClosedFormNlsKdvM3 => {
                let p = param_m3_nlskdv(free_values[0], free_values[1]);
                ChartSolution::Points(if p.max_residual() <= self.settings.tol_res {
                    vec![p]
                } else {
                    vec![]
                })
            }
            ChartSolver::ClosedFormKdvCkdvM1 => {
                let mut out = Vec::with_capacity(2);
                for branch in [PlusMinus::Plus, PlusMinus::Minus] {
                    if let Ok(Some(p)) =
                        param_m1_kdvckdv(free_values[0], free_values[1], self.system.params, branch)
                    {
                        let duplicate = out.iter().any(|q: &ManifoldPoint| q.ks == p.ks);
                        if !duplicate && p.max_residual() <= self.settings.tol_res {
                            out.push(p);
                        }
                    }
                }
                ChartSolution::Points(out)
            }
            ChartSolver::GenericPoly => {
                let assignment: Vec<(usize, f64)> = self
                    .free_indices
                    .iter()
                    .copied()
                    .zip(free_values.iter().copied())
                    .collect();
                let unsolved = unsolved_indices(self.process.arity(), &self.free_indices)
                    .expect("free indices validated at construction");
                solve_generic(
                    &self.process,
                    &self.system,
                    &assignment,
                    unsolved,
                    &self.settings,
                )
            }
        }
    }
}
