use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::resonance::Interval;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    #[default]
    Chebyshev,
    Monomial,
}

impl BasisKind {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "chebyshev" => Ok(BasisKind::Chebyshev),
            "monomial" => Ok(BasisKind::Monomial),
            other => Err(Error::Argument(format!("unknown basis `{other}`"))),
        }
    }
}

/// Polynomials of degree `0..=degree` in `t = (2k - lo - hi) / (hi - lo)`,
/// which maps `interval` onto `[-1, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionBasis {
    pub kind: BasisKind,
    pub degree: usize,
    pub interval: Interval,
}

impl FunctionBasis {
    pub fn new(kind: BasisKind, degree: usize, interval: Interval) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Argument(format!(
                "basis degree must be at least 2, got {degree}"
            )));
        }
        if !(interval.width() > 0.0) || !interval.width().is_finite() {
            return Err(Error::Argument(format!(
                "degenerate basis interval {interval:?}"
            )));
        }
        Ok(Self {
            kind,
            degree,
            interval,
        })
    }

    pub fn len(&self) -> usize {
        self.degree + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn mid_half(&self) -> (f64, f64) {
        (
            0.5 * (self.interval.lo + self.interval.hi),
            0.5 * self.interval.width(),
        )
    }

    pub fn to_unit(&self, k: f64) -> f64 {
        let (mid, half) = self.mid_half();
        (k - mid) / half
    }

    /// Writes the `degree + 1` basis values at `k` into `out`.
    pub fn eval_into(&self, k: f64, out: &mut [f64]) {
        let t = self.to_unit(k);
        out[0] = 1.0;
        out[1] = t;
        for d in 2..=self.degree {
            out[d] = match self.kind {
                BasisKind::Chebyshev => 2.0 * t * out[d - 1] - out[d - 2],
                BasisKind::Monomial => t * out[d - 1],
            };
        }
    }

    pub fn eval(&self, k: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.eval_into(k, &mut out);
        out
    }

    /// Coefficients `c` with `p(k) = sum_d c[d] phi_d(k)`.
    pub fn represent(&self, p: &Polynomial) -> Result<Vec<f64>> {
        let deg = p.degree().unwrap_or(0);
        if deg > self.degree {
            return Err(Error::Argument(format!(
                "degree-{deg} function does not fit a degree-{} basis",
                self.degree
            )));
        }
        let (mid, half) = self.mid_half();
        let mut q = p.compose_linear(mid, half).coeffs().to_vec();
        q.resize(self.len(), 0.0);
        match self.kind {
            BasisKind::Monomial => Ok(q),
            BasisKind::Chebyshev => {
                let cheb = chebyshev_monomials(self.degree);
                let mut c = vec![0.0; self.len()];
                for d in (0..=self.degree).rev() {
                    let lead = cheb[d][d];
                    c[d] = q[d] / lead;
                    for (qi, ti) in q.iter_mut().zip(&cheb[d]) {
                        *qi -= c[d] * ti;
                    }
                }
                Ok(c)
            }
        }
    }
}

/// Monomial coefficients of `T_0..=T_n`, each padded to length `n + 1`.
fn chebyshev_monomials(n: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let mut c = vec![0.0; n + 1];
        match d {
            0 => c[0] = 1.0,
            1 => c[1] = 1.0,
            _ => {
                for i in 0..n {
                    c[i + 1] += 2.0 * out[d - 1][i];
                }
                for i in 0..=n {
                    c[i] -= out[d - 2][i];
                }
            }
        }
        out.push(c);
    }
    out
}
