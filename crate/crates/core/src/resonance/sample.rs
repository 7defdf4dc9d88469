use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{BranchTag, ChartSolution, Interval, ManifoldChart, ManifoldPoint, ResonanceProcess};
use crate::dispersion::{mismatch_unchecked, WaveSystem};

/// Draws without a single hit after which the manifold is treated as empty
/// inside the domain, as a multiple of the requested count.
const EMPTY_PROBE_PER_POINT: usize = 10;
/// Lower bound on the empty probe.
const EMPTY_PROBE_MIN: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub points: Vec<ManifoldPoint>,
    pub requested: usize,
    pub attempts: usize,
    /// Set when fewer than `requested` points were found within the attempt
    /// budget, or when the manifold is the whole momentum hyperplane.
    pub warning: Option<String>,
}

impl Sample {
    pub fn is_complete(&self) -> bool {
        self.points.len() >= self.requested
    }
}

/// Draws free wavenumbers uniformly from the chart domain and keeps every
/// solved point that passes the residual, `k_min` and range filters. The same
/// chart, count and seed give the same points.
///
/// For four-wave processes every wavenumber must clear `k_min`. For three-wave
/// processes only the free one is checked, since the long-wave triad manifold
/// is the union of the planes `k_j = 0`.
pub fn sample_manifold(chart: &ManifoldChart, count: usize, seed: u64) -> Sample {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let settings = chart.settings();
    let budget = count.saturating_mul(settings.max_attempts_per_point.max(1));
    let empty_probe = count
        .saturating_mul(EMPTY_PROBE_PER_POINT)
        .max(EMPTY_PROBE_MIN);
    let free = chart.free_indices();
    let domain = chart.domain();
    let range = chart.solved_range();
    let check_all = chart.process().arity() >= 4;
    let mut values = vec![0.0; free.len()];
    let mut points = Vec::with_capacity(count);
    let mut attempts = 0;

    while points.len() < count && attempts < budget {
        if points.is_empty() && attempts >= empty_probe {
            break;
        }
        attempts += 1;
        for (v, d) in values.iter_mut().zip(domain) {
            *v = if d.width() > 0.0 {
                rng.random_range(d.lo..d.hi)
            } else {
                d.lo
            };
        }
        if values.iter().any(|v| v.abs() < settings.k_min) {
            continue;
        }
        let found = match chart.solve(&values) {
            ChartSolution::Points(found) => found,
            ChartSolution::FullManifold => {
                return Sample {
                    points: Vec::new(),
                    requested: count,
                    attempts,
                    warning: Some("every momentum-conserving tuple is resonant".into()),
                }
            }
        };
        for p in found {
            if points.len() >= count {
                break;
            }
            let solved_ok =
                p.ks.iter()
                    .enumerate()
                    .filter(|(j, _)| !free.contains(j))
                    .all(|(_, &k)| range.contains(k) && (!check_all || k.abs() >= settings.k_min));
            if solved_ok && p.max_residual() <= settings.tol_res {
                points.push(p);
            }
        }
    }

    let warning = (points.len() < count).then(|| {
        format!(
            "found {} of {} points on {} after {} attempts",
            points.len(),
            count,
            chart.process().name(),
            attempts
        )
    });
    Sample {
        points,
        requested: count,
        attempts,
        warning,
    }
}

/// Uniform points of the momentum hyperplane: every wavenumber but the last
/// drawn from `domain`, the last fixed by momentum conservation. Used when
/// the resonance manifold is the whole hyperplane.
pub fn sample_momentum_plane(
    process: &ResonanceProcess,
    system: &WaveSystem,
    domain: Interval,
    k_min: f64,
    count: usize,
    seed: u64,
) -> Vec<ManifoldPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let waves = process.waves();
    let n = waves.len();
    let mut points = Vec::with_capacity(count);
    let mut attempts = 0;
    while points.len() < count && attempts < count.saturating_mul(200) {
        attempts += 1;
        let mut ks: Vec<f64> = (0..n - 1)
            .map(|_| rng.random_range(domain.lo..domain.hi))
            .collect();
        let partial: f64 = ks.iter().zip(waves).map(|(k, w)| w.sign.value() * k).sum();
        ks.push(-waves[n - 1].sign.value() * partial);
        if ks.iter().any(|k| k.abs() < k_min) {
            continue;
        }
        let (residual_k, residual_w) = mismatch_unchecked(process, system, &ks);
        points.push(ManifoldPoint {
            ks,
            residual_k,
            residual_w,
            branch_tag: BranchTag::Root(0),
        });
    }
    points
}
