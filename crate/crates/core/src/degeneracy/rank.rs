use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{CollocationMatrix, Mode};
use crate::config::Config;
use crate::error::{Error, Result};

/// Relative singular value below which known relations count as dependent.
const KNOWN_RANK_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankSettings {
    pub rank_tol: f64,
    pub gap_factor: f64,
    pub projection_tol: f64,
}

impl RankSettings {
    pub fn from_config(cfg: &Config) -> Self {
        Self {
            rank_tol: cfg.rank_tol,
            gap_factor: cfg.gap_factor,
            projection_tol: cfg.projection_tol,
        }
    }
}

impl Default for RankSettings {
    fn default() -> Self {
        Self::from_config(&Config::default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankVerdict {
    NondegenerateRank2,
    DegenerateRank3Plus,
    BilliardInfiniteRank,
    Inconclusive,
}

impl RankVerdict {
    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            RankVerdict::DegenerateRank3Plus | RankVerdict::BilliardInfiniteRank
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnownCheck {
    pub name: String,
    /// Relative distance of the relation from the numeric nullspace.
    pub residual: f64,
    pub in_nullspace: bool,
}

/// `sum_g f_g = const` on the sample. `functions[g][d]` multiplies basis
/// function `d` of group `g`; constant terms are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelianRelation {
    pub labels: Vec<String>,
    pub functions: Vec<Vec<f64>>,
    /// `|A y| / sigma_max` for the unit-norm scaled coefficient vector `y`.
    pub residual_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankReport {
    pub mode: Mode,
    pub degree: usize,
    pub points: usize,
    /// Singular values of the scaled matrix over `sigma_max`, descending.
    pub singular_values: Vec<f64>,
    pub null_dim: usize,
    pub n_known: usize,
    pub n_beyond_known: usize,
    /// Smallest retained over largest discarded singular value; `None` when
    /// nothing was discarded or the discarded values are exactly zero.
    pub gap_ratio: Option<f64>,
    pub conclusive: bool,
    pub known_projection_check: Vec<KnownCheck>,
    pub extra_relations: Vec<AbelianRelation>,
    pub verdict: RankVerdict,
}

fn sorted_svd(a: DMatrix<f64>, want_u: bool) -> (Vec<f64>, Option<DMatrix<f64>>, DMatrix<f64>) {
    let svd = a.svd(want_u, true);
    let v_t = svd.v_t.expect("requested V");
    let s = svd.singular_values;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    let values = order.iter().map(|&i| s[i]).collect();
    let v_rows = DMatrix::from_fn(order.len(), v_t.ncols(), |r, c| v_t[(order[r], c)]);
    let u = svd
        .u
        .map(|u| DMatrix::from_fn(u.nrows(), order.len(), |r, c| u[(r, order[c])]));
    (values, u, v_rows)
}

/// Numerical nullspace of the collocation matrix and its comparison with the
/// relations every resonance manifold carries.
///
/// Constant columns are dropped and the rest divided by their magnitude
/// before cancellation between waves, so that a near-cancelling column shows
/// up as a small singular value instead of amplified noise. A known relation
/// missing from a conclusive nullspace is an error.
pub fn rank_analyze(
    m: &CollocationMatrix,
    known: &[(String, DVector<f64>)],
    settings: &RankSettings,
) -> Result<RankReport> {
    let n = m.degree + 1;
    let active: Vec<usize> = (0..m.width()).filter(|c| c % n != 0).collect();
    let na = active.len();
    let mut a = DMatrix::zeros(m.rows(), na);
    let scale: Vec<f64> = active
        .iter()
        .map(|&c| {
            if m.column_scale[c] > 0.0 {
                m.column_scale[c]
            } else {
                1.0
            }
        })
        .collect();
    for (i, &c) in active.iter().enumerate() {
        a.set_column(i, &(m.matrix.column(c) / scale[i]));
    }

    let r = if a.nrows() > na {
        a.clone().qr().r()
    } else {
        a.clone()
    };
    let (raw, _, v_rows) = sorted_svd(r, false);
    let sigma_max = raw.first().copied().unwrap_or(0.0);
    let singular_values: Vec<f64> = raw
        .iter()
        .map(|&s| if sigma_max > 0.0 { s / sigma_max } else { 0.0 })
        .collect();
    let null_dim = singular_values
        .iter()
        .filter(|&&s| s < settings.rank_tol)
        .count();
    let kept = na - null_dim;
    let gap_ratio = if null_dim == 0 {
        singular_values.last().map(|&s| s / settings.rank_tol)
    } else if kept == 0 {
        None
    } else {
        let discarded = singular_values[kept];
        (discarded > 0.0).then(|| singular_values[kept - 1] / discarded)
    };
    let conclusive = gap_ratio.is_none_or(|g| g >= settings.gap_factor);

    // Orthonormal nullspace basis in scaled coordinates, one column per direction.
    let null_basis = DMatrix::from_fn(na, null_dim, |i, j| v_rows[(kept + j, i)]);
    let project = |y: &DVector<f64>| &null_basis * (null_basis.transpose() * y);

    let mut checks = Vec::with_capacity(known.len());
    let mut known_scaled = Vec::new();
    for (name, x) in known {
        if x.len() != m.width() {
            return Err(Error::Argument(format!(
                "relation `{name}` has the wrong length"
            )));
        }
        let y = DVector::from_fn(na, |i, _| x[active[i]] * scale[i]);
        let norm = y.norm();
        let residual = if norm > 0.0 {
            (&y - project(&y)).norm() / norm
        } else {
            0.0
        };
        let in_nullspace = residual < settings.projection_tol;
        if conclusive && !in_nullspace {
            return Err(Error::KnownRelationMissing {
                name: name.clone(),
                residual,
            });
        }
        if norm > 0.0 {
            known_scaled.push(project(&y) / norm);
        }
        checks.push(KnownCheck {
            name: name.clone(),
            residual,
            in_nullspace,
        });
    }

    let (n_known, known_span) = if known_scaled.is_empty() {
        (0, DMatrix::zeros(na, 0))
    } else {
        let k = DMatrix::from_columns(&known_scaled);
        let (s, u, _) = sorted_svd(k, true);
        let rank = s.iter().filter(|&&v| v > KNOWN_RANK_TOL * s[0]).count();
        (rank, u.expect("requested U").columns(0, rank).into_owned())
    };
    let n_beyond_known = null_dim.saturating_sub(n_known);

    let mut extra_relations = Vec::new();
    if n_beyond_known > 0 {
        // Complement of the known span inside the nullspace, in nullspace
        // coordinates so the directions stay exactly in the nullspace.
        let g = null_basis.transpose() * &known_span;
        let complement = DMatrix::identity(null_dim, null_dim) - &g * g.transpose();
        let eig = complement.symmetric_eigen();
        let mut order: Vec<usize> = (0..null_dim).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        for &j in order.iter().take(n_beyond_known) {
            let y = &null_basis * eig.eigenvectors.column(j);
            let residual_norm = if sigma_max > 0.0 {
                (&a * &y).norm() / sigma_max
            } else {
                0.0
            };
            let mut functions = vec![vec![0.0; n]; m.n_groups()];
            for (i, &c) in active.iter().enumerate() {
                functions[c / n][c % n] = y[i] / scale[i];
            }
            let peak = functions
                .iter()
                .flatten()
                .fold(0.0_f64, |x, &v| x.max(v.abs()));
            if peak > 0.0 {
                functions.iter_mut().flatten().for_each(|v| *v /= peak);
            }
            extra_relations.push(AbelianRelation {
                labels: m.group_labels.clone(),
                functions,
                residual_norm,
            });
        }
    }

    let verdict = if !conclusive {
        RankVerdict::Inconclusive
    } else if n_beyond_known > 0 {
        RankVerdict::DegenerateRank3Plus
    } else {
        RankVerdict::NondegenerateRank2
    };
    Ok(RankReport {
        mode: m.mode,
        degree: m.degree,
        points: m.rows(),
        singular_values,
        null_dim,
        n_known,
        n_beyond_known,
        gap_ratio,
        conclusive,
        known_projection_check: checks,
        extra_relations,
        verdict,
    })
}
