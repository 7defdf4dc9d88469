use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{BasisKind, FunctionBasis};
use crate::dispersion::{Branch, WaveSystem};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::resonance::{Interval, ManifoldPoint, ResonanceProcess};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// One unknown function per wave.
    Web,
    /// One unknown function per dispersion branch, shared by the waves on it.
    Tied,
}

impl Mode {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "web" => Ok(Mode::Web),
            "tied" => Ok(Mode::Tied),
            other => Err(Error::Argument(format!("unknown mode `{other}`"))),
        }
    }
}

/// Rows are manifold points. Column `g * (degree + 1) + d` holds
/// `sum_{j in g} sigma_j phi_{g,d}(k_j)` minus its mean over the rows, so a
/// null vector is a set of group functions whose signed sum is constant on
/// the sample.
#[derive(Clone, Debug)]
pub struct CollocationMatrix {
    pub mode: Mode,
    pub degree: usize,
    pub bases: Vec<FunctionBasis>,
    /// Branch whose law a group carries in the frequency relation.
    pub group_branch: Vec<Branch>,
    pub group_labels: Vec<String>,
    pub matrix: DMatrix<f64>,
    /// `sqrt(sum over rows and group waves of phi_{g,d}(k_j)^2)`: the size of a
    /// column before signed cancellation between waves.
    pub column_scale: Vec<f64>,
}

impl CollocationMatrix {
    pub fn width(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_groups(&self) -> usize {
        self.bases.len()
    }

    /// Coefficient vector of the relation `sum_g f_g` given one function per group.
    pub fn relation_vector(&self, functions: &[Polynomial]) -> Result<DVector<f64>> {
        if functions.len() != self.n_groups() {
            return Err(Error::Argument(format!(
                "need {} group functions, got {}",
                self.n_groups(),
                functions.len()
            )));
        }
        let n = self.degree + 1;
        let mut v = DVector::zeros(self.width());
        for (g, (basis, f)) in self.bases.iter().zip(functions).enumerate() {
            for (d, c) in basis.represent(f)?.into_iter().enumerate() {
                v[g * n + d] = c;
            }
        }
        Ok(v)
    }

    /// Momentum (`f_g(k) = k`) and frequency (`f_g = omega` of the group's
    /// branch) relations, which hold on every resonance manifold.
    pub fn known_relations(&self, system: &WaveSystem) -> Result<Vec<(String, DVector<f64>)>> {
        let momentum: Vec<Polynomial> = self.bases.iter().map(|_| Polynomial::identity()).collect();
        let frequency: Vec<Polynomial> = self
            .group_branch
            .iter()
            .map(|&b| system.law(b).polynomial())
            .collect();
        Ok(vec![
            ("momentum".to_string(), self.relation_vector(&momentum)?),
            ("frequency".to_string(), self.relation_vector(&frequency)?),
        ])
    }
}

/// Minimum sample size for a collocation matrix of the given degree.
pub fn min_points(degree: usize) -> usize {
    4 * (degree + 1)
}

pub fn build_collocation(
    points: &[ManifoldPoint],
    process: &ResonanceProcess,
    kind: BasisKind,
    degree: usize,
    mode: Mode,
) -> Result<CollocationMatrix> {
    if points.len() < min_points(degree) {
        return Err(Error::Argument(format!(
            "collocation at degree {degree} needs at least {} points, got {}",
            min_points(degree),
            points.len()
        )));
    }
    let arity = process.arity();
    if let Some(p) = points.iter().find(|p| p.ks.len() != arity) {
        return Err(Error::Argument(format!(
            "point {:?} does not match arity {arity}",
            p.ks
        )));
    }
    let waves = process.waves();
    let (group_of_wave, group_branch, group_labels): (Vec<usize>, Vec<Branch>, Vec<String>) =
        match mode {
            Mode::Web => (
                (0..arity).collect(),
                waves.iter().map(|w| w.branch).collect(),
                (1..=arity).map(|i| format!("k{i}")).collect(),
            ),
            Mode::Tied => {
                let mut branches = process.branches();
                branches.sort();
                branches.dedup();
                let of_wave = waves
                    .iter()
                    .map(|w| branches.iter().position(|&b| b == w.branch).unwrap())
                    .collect();
                let labels = branches
                    .iter()
                    .map(|b| match b {
                        Branch::Short => "short".to_string(),
                        Branch::Long => "long".to_string(),
                    })
                    .collect();
                (of_wave, branches, labels)
            }
        };
    let n_groups = group_branch.len();

    let mut bases = Vec::with_capacity(n_groups);
    for g in 0..n_groups {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in points {
            for (j, &k) in p.ks.iter().enumerate() {
                if group_of_wave[j] == g {
                    lo = lo.min(k);
                    hi = hi.max(k);
                }
            }
        }
        if !(hi > lo) {
            // A wavenumber pinned to one value carries no information.
            lo -= 1.0;
            hi += 1.0;
        }
        bases.push(FunctionBasis::new(kind, degree, Interval::new(lo, hi))?);
    }

    let n = degree + 1;
    let mut matrix = DMatrix::zeros(points.len(), n_groups * n);
    let mut phi = vec![0.0; n];
    let mut sq = vec![0.0; n_groups * n];
    for (r, p) in points.iter().enumerate() {
        for (j, &k) in p.ks.iter().enumerate() {
            let g = group_of_wave[j];
            let s = waves[j].sign.value();
            bases[g].eval_into(k, &mut phi);
            for d in 0..n {
                matrix[(r, g * n + d)] += s * phi[d];
                sq[g * n + d] += phi[d] * phi[d];
            }
        }
    }
    for mut col in matrix.column_iter_mut() {
        let mean: f64 = col.mean();
        col.add_scalar_mut(-mean);
    }
    let column_scale = sq.into_iter().map(f64::sqrt).collect();
    Ok(CollocationMatrix {
        mode,
        degree,
        bases,
        group_branch,
        group_labels,
        matrix,
        column_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::SystemParams;
    use crate::resonance::{param_m3_nlskdv, ProcessId};

    fn m3_points(n: usize) -> Vec<ManifoldPoint> {
        (0..n)
            .map(|i| {
                let a = -4.0 + 8.0 * (i as f64 * 0.618_034).fract();
                let b = -4.0 + 8.0 * (i as f64 * 0.414_214).fract();
                param_m3_nlskdv(a, b)
            })
            .collect()
    }

    #[test]
    fn widths() {
        let p = ProcessId::NlsM3.process();
        let pts = m3_points(100);
        let web = build_collocation(&pts, &p, BasisKind::Chebyshev, 8, Mode::Web).unwrap();
        assert_eq!(web.width(), 36);
        let tied = build_collocation(&pts, &p, BasisKind::Chebyshev, 8, Mode::Tied).unwrap();
        assert_eq!(tied.width(), 18);
        assert!(build_collocation(&pts[..35], &p, BasisKind::Chebyshev, 8, Mode::Web).is_err());
    }

    #[test]
    fn known_relations_annihilated() {
        let p = ProcessId::NlsM3.process();
        let sys = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
        let pts = m3_points(200);
        for mode in [Mode::Web, Mode::Tied] {
            for kind in [BasisKind::Chebyshev, BasisKind::Monomial] {
                let m = build_collocation(&pts, &p, kind, 6, mode).unwrap();
                for (name, v) in m.known_relations(&sys).unwrap() {
                    let r = (&m.matrix * &v).norm();
                    let scale = m.matrix.norm() * v.norm();
                    assert!(r <= 1e-10 * scale, "{mode:?} {kind:?} {name}: {r}");
                }
            }
        }
    }
}
