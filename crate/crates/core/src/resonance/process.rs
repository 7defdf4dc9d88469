use serde::{Deserialize, Serialize};

use crate::dispersion::{Branch, SystemId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wave {
    pub sign: Sign,
    pub branch: Branch,
}

impl Wave {
    pub fn new(sign: Sign, branch: Branch) -> Self {
        Self { sign, branch }
    }
}

/// An n-wave scattering process: the manifold where both
/// `sum sigma_j k_j` and `sum sigma_j omega^(l_j)(k_j)` vanish.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceProcess {
    name: String,
    waves: Vec<Wave>,
}

impl ResonanceProcess {
    pub fn new(name: impl Into<String>, waves: Vec<Wave>) -> Result<Self> {
        if !(3..=4).contains(&waves.len()) {
            return Err(Error::UnsupportedArity(waves.len()));
        }
        Ok(Self {
            name: name.into(),
            waves,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn waves(&self) -> &[Wave] {
        &self.waves
    }

    pub fn arity(&self) -> usize {
        self.waves.len()
    }

    pub fn with_flipped_sign(&self, j: usize) -> Self {
        let mut waves = self.waves.clone();
        waves[j].sign = waves[j].sign.flipped();
        Self {
            name: format!("{}~flip{}", self.name, j + 1),
            waves,
        }
    }

    /// Same process with waves reordered: wave `i` of the result is wave
    /// `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            name: self.name.clone(),
            waves: perm.iter().map(|&i| self.waves[i]).collect(),
        }
    }

    /// Branches that occur, in `Branch` order.
    pub fn branches(&self) -> Vec<Branch> {
        let mut b: Vec<Branch> = self.waves.iter().map(|w| w.branch).collect();
        b.sort();
        b.dedup();
        b
    }
}

/// The manifolds that appear when normal-form transformations are applied to
/// the two built-in systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProcessId {
    /// NLS-KdV `k1-k2-k3=0`, `Om1-Om2-Om3=0`.
    NlsM1,
    /// NLS-KdV `k1-k2-k3=0`, `om1-Om2-om3=0`.
    NlsM2,
    /// NLS-KdV `k1+k2-k3-k4=0`, `om1+Om2-om3-Om4=0`.
    NlsM3,
    /// KdV-CKdV `k1-k2-k3=0`, `Om1-Om2-Om3=0`.
    CkM1,
    /// KdV-CKdV `k1-k2+k3=0`, `om1-Om2+om3=0`.
    CkM2,
    /// KdV-CKdV `k1-k2-k3=0`, `om1-Om2-om3=0`.
    CkM3,
    /// KdV-CKdV `k1=k2+k3+k4`, `om1=Om2+om3+Om4`.
    CkCal1,
    /// KdV-CKdV `k1+k2=k3+k4`, `om1+Om2=om3+Om4`.
    CkCal2,
    /// KdV-CKdV `k1+k2+k3=k4`, `om1+Om2+om3=Om4`.
    CkCal3,
    /// KdV-CKdV `k1+k2+k3+k4=0`, `om1+Om2+om3+Om4=0`.
    CkCal4,
    /// KdV-CKdV `k1+k3=k2+k4`, `om1+om3=Om2+Om4`.
    CkCal5,
}

impl ProcessId {
    pub const ALL: [ProcessId; 11] = [
        ProcessId::NlsM1,
        ProcessId::NlsM2,
        ProcessId::NlsM3,
        ProcessId::CkM1,
        ProcessId::CkM2,
        ProcessId::CkM3,
        ProcessId::CkCal1,
        ProcessId::CkCal2,
        ProcessId::CkCal3,
        ProcessId::CkCal4,
        ProcessId::CkCal5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProcessId::NlsM1 => "nls-M1",
            ProcessId::NlsM2 => "nls-M2",
            ProcessId::NlsM3 => "nls-M3",
            ProcessId::CkM1 => "ck-M1",
            ProcessId::CkM2 => "ck-M2",
            ProcessId::CkM3 => "ck-M3",
            ProcessId::CkCal1 => "ck-calM1",
            ProcessId::CkCal2 => "ck-calM2",
            ProcessId::CkCal3 => "ck-calM3",
            ProcessId::CkCal4 => "ck-calM4",
            ProcessId::CkCal5 => "ck-calM5",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::Argument(format!("unknown process `{name}`")))
    }

    pub fn system(self) -> SystemId {
        match self {
            ProcessId::NlsM1 | ProcessId::NlsM2 | ProcessId::NlsM3 => SystemId::NlsKdv,
            _ => SystemId::KdvCkdv,
        }
    }

    pub fn for_system(id: SystemId) -> Vec<ProcessId> {
        Self::ALL.into_iter().filter(|p| p.system() == id).collect()
    }

    pub fn process(self) -> ResonanceProcess {
        use Branch::{Long as L, Short as S};
        use Sign::{Minus as M, Plus as P};
        let waves: &[(Sign, Branch)] = match self {
            ProcessId::NlsM1 | ProcessId::CkM1 => &[(P, L), (M, L), (M, L)],
            ProcessId::NlsM2 | ProcessId::CkM3 => &[(P, S), (M, L), (M, S)],
            ProcessId::CkM2 => &[(P, S), (M, L), (P, S)],
            ProcessId::NlsM3 | ProcessId::CkCal2 => &[(P, S), (P, L), (M, S), (M, L)],
            ProcessId::CkCal1 => &[(P, S), (M, L), (M, S), (M, L)],
            ProcessId::CkCal3 => &[(P, S), (P, L), (P, S), (M, L)],
            ProcessId::CkCal4 => &[(P, S), (P, L), (P, S), (P, L)],
            ProcessId::CkCal5 => &[(P, S), (M, L), (P, S), (M, L)],
        };
        ResonanceProcess {
            name: self.name().to_string(),
            waves: waves.iter().map(|&(s, b)| Wave::new(s, b)).collect(),
        }
    }
}
