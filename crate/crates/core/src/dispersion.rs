//! Polynomial dispersion laws and the two long/short-wave systems.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::resonance::ResonanceProcess;

/// Frequency as a polynomial in the wavenumber with no constant term:
/// `omega(k) = sum_{d>=1} coeffs[d-1] * k^d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionLaw {
    coeffs: Vec<f64>,
}

impl DispersionLaw {
    /// `coeffs[0]` multiplies `k`, `coeffs[1]` multiplies `k^2`, and so on.
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0.0)
            .map_or(0, |i| i + 1)
    }

    pub fn eval(&self, k: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| (acc + c) * k)
    }

    /// True when only odd powers appear, so `omega(-k) = -omega(k)`.
    pub fn is_odd(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| (i + 1) % 2 == 1 || c == 0.0)
    }

    pub fn polynomial(&self) -> Polynomial {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(0.0);
        c.extend_from_slice(&self.coeffs);
        Polynomial::new(c)
    }
}

pub fn eval_dispersion(law: &DispersionLaw, k: f64) -> f64 {
    law.eval(k)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl SystemParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha.is_finite() && self.beta.is_finite() && self.gamma.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SystemId {
    NlsKdv,
    KdvCkdv,
    Custom,
}

impl SystemId {
    pub fn name(self) -> &'static str {
        match self {
            SystemId::NlsKdv => "nls-kdv",
            SystemId::KdvCkdv => "kdv-ckdv",
            SystemId::Custom => "custom",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "nls-kdv" => Ok(SystemId::NlsKdv),
            "kdv-ckdv" => Ok(SystemId::KdvCkdv),
            "custom" => Ok(SystemId::Custom),
            other => Err(Error::Argument(format!("unknown system `{other}`"))),
        }
    }
}

/// Which of the two wave families a wave belongs to: the short (envelope,
/// `u`) waves with frequency omega or the long (`v`) waves with frequency Omega.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Short,
    Long,
}

/// Parameter values that single a system out. Computed with exact float
/// comparison on the values the user supplied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialFlags {
    pub uncoupled: bool,
    pub alpha_zero: bool,
    pub gamma_zero: bool,
    pub alpha_eq_gamma: bool,
}

impl SpecialFlags {
    /// On one of the three exceptional lines of the coupled KdV-CKdV system.
    pub fn special_case(&self) -> bool {
        !self.uncoupled && (self.alpha_zero || self.gamma_zero || self.alpha_eq_gamma)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveSystem {
    pub id: SystemId,
    pub params: SystemParams,
    pub short: DispersionLaw,
    pub long: DispersionLaw,
    pub flags: SpecialFlags,
}

impl WaveSystem {
    /// omega = k^2, Omega = -k^3; the parameters only enter the couplings.
    pub fn nls_kdv(params: SystemParams) -> Self {
        Self {
            id: SystemId::NlsKdv,
            params,
            short: DispersionLaw::new(vec![0.0, 1.0]),
            long: DispersionLaw::new(vec![0.0, 0.0, -1.0]),
            flags: SpecialFlags {
                uncoupled: params.beta == 0.0,
                ..SpecialFlags::default()
            },
        }
    }

    /// omega = 2 beta k - alpha k^3, Omega = beta k - gamma k^3.
    pub fn kdv_ckdv(params: SystemParams) -> Self {
        let SystemParams { alpha, beta, gamma } = params;
        Self {
            id: SystemId::KdvCkdv,
            params,
            short: DispersionLaw::new(vec![2.0 * beta, 0.0, -alpha]),
            long: DispersionLaw::new(vec![beta, 0.0, -gamma]),
            flags: SpecialFlags {
                uncoupled: beta == 0.0,
                alpha_zero: alpha == 0.0,
                gamma_zero: gamma == 0.0,
                alpha_eq_gamma: alpha == gamma,
            },
        }
    }

    pub fn custom(short: DispersionLaw, long: DispersionLaw) -> Self {
        Self {
            id: SystemId::Custom,
            params: SystemParams::default(),
            short,
            long,
            flags: SpecialFlags::default(),
        }
    }

    pub fn law(&self, branch: Branch) -> &DispersionLaw {
        match branch {
            Branch::Short => &self.short,
            Branch::Long => &self.long,
        }
    }

    pub fn frequency(&self, branch: Branch, k: f64) -> f64 {
        self.law(branch).eval(k)
    }
}

pub fn make_system(
    id: SystemId,
    params: SystemParams,
    laws: Option<(DispersionLaw, DispersionLaw)>,
) -> Result<WaveSystem> {
    if !params.is_finite() {
        return Err(Error::Config(format!("non-finite parameters {params:?}")));
    }
    match (id, laws) {
        (SystemId::NlsKdv, None) => Ok(WaveSystem::nls_kdv(params)),
        (SystemId::KdvCkdv, None) => Ok(WaveSystem::kdv_ckdv(params)),
        (SystemId::Custom, Some((short, long))) => {
            let mut sys = WaveSystem::custom(short, long);
            sys.params = params;
            Ok(sys)
        }
        (SystemId::Custom, None) => Err(Error::Config(
            "custom system requires dispersion laws".into(),
        )),
        (id, Some(_)) => Err(Error::Config(format!(
            "{} has fixed dispersion laws; supply laws only for custom systems",
            id.name()
        ))),
    }
}

/// Momentum and frequency mismatch `(sum sigma_j k_j, sum sigma_j omega_j(k_j))`.
pub fn mismatch(process: &ResonanceProcess, system: &WaveSystem, ks: &[f64]) -> Result<(f64, f64)> {
    if ks.len() != process.arity() {
        return Err(Error::Argument(format!(
            "process {} has arity {}, got {} wavenumbers",
            process.name(),
            process.arity(),
            ks.len()
        )));
    }
    Ok(mismatch_unchecked(process, system, ks))
}

pub(crate) fn mismatch_unchecked(
    process: &ResonanceProcess,
    system: &WaveSystem,
    ks: &[f64],
) -> (f64, f64) {
    process
        .waves()
        .iter()
        .zip(ks)
        .fold((0.0, 0.0), |(dk, dw), (wave, &k)| {
            let s = wave.sign.value();
            (dk + s * k, dw + s * system.frequency(wave.branch, k))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonance::ProcessId;
    use proptest::prelude::*;

    #[test]
    fn evaluates_builtin_laws() {
        let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
        assert_eq!(eval_dispersion(&nls.short, 2.0), 4.0);
        assert_eq!(eval_dispersion(&nls.long, -1.0), 1.0);
        let ck = WaveSystem::kdv_ckdv(SystemParams::new(1.0, 1.0, 0.0));
        assert_eq!(eval_dispersion(&ck.short, 1.0), 1.0);
    }

    #[test]
    fn special_lines_are_flagged_not_rejected() {
        let s = make_system(SystemId::KdvCkdv, SystemParams::new(1.0, 1.0, 1.0), None).unwrap();
        assert!(s.flags.alpha_eq_gamma && s.flags.special_case());
        let s = make_system(SystemId::NlsKdv, SystemParams::new(1.0, 0.0, 1.0), None).unwrap();
        assert!(s.flags.uncoupled);
        let s = make_system(SystemId::KdvCkdv, SystemParams::new(2.0, 1.0, -1.0), None).unwrap();
        assert_eq!(s.flags, SpecialFlags::default());
    }

    #[test]
    fn custom_requires_laws() {
        let err = make_system(SystemId::Custom, SystemParams::default(), None);
        assert!(matches!(err, Err(Error::Config(_))));
        let laws = (
            DispersionLaw::new(vec![0.0, 1.0]),
            DispersionLaw::new(vec![1.0]),
        );
        let s = make_system(SystemId::Custom, SystemParams::default(), Some(laws)).unwrap();
        assert_eq!(s.long.eval(3.0), 3.0);
    }

    #[test]
    fn mismatch_on_parameterized_m3_point() {
        let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
        let m3 = ProcessId::NlsM3.process();
        assert_eq!(
            mismatch(&m3, &nls, &[-3.0, 1.0, -4.0, 2.0]).unwrap(),
            (0.0, 0.0)
        );
        assert_eq!(
            mismatch(&m3, &nls, &[1.0, 1.0, 1.0, 1.0]).unwrap(),
            (0.0, 0.0)
        );
        assert!(matches!(
            mismatch(&m3, &nls, &[1.0, 2.0]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn origin_is_resonant_for_every_builtin() {
        let systems = [
            WaveSystem::nls_kdv(SystemParams::new(0.3, -1.2, 2.0)),
            WaveSystem::kdv_ckdv(SystemParams::new(0.3, -1.2, 2.0)),
        ];
        for sys in &systems {
            for id in ProcessId::for_system(sys.id) {
                let p = id.process();
                let zeros = vec![0.0; p.arity()];
                assert_eq!(mismatch(&p, sys, &zeros).unwrap(), (0.0, 0.0));
            }
        }
    }

    proptest! {
        #[test]
        fn cubic_long_wave_is_odd(k in -50.0f64..50.0) {
            let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
            prop_assert_eq!(nls.long.eval(-k), -nls.long.eval(k));
            prop_assert!(nls.long.is_odd() && !nls.short.is_odd());
        }

        #[test]
        fn flipping_a_sign_negates_that_contribution(
            ks in proptest::collection::vec(-5.0f64..5.0, 4),
            j in 0usize..4,
            a in -2.0f64..2.0, b in -2.0f64..2.0, g in -2.0f64..2.0,
        ) {
            let sys = WaveSystem::kdv_ckdv(SystemParams::new(a, b, g));
            let p = ProcessId::CkCal1.process();
            let flipped = p.with_flipped_sign(j);
            let (dk, dw) = mismatch(&p, &sys, &ks).unwrap();
            let (fk, fw) = mismatch(&flipped, &sys, &ks).unwrap();
            let wave = p.waves()[j];
            let s = wave.sign.value();
            let ck = s * ks[j];
            let cw = s * sys.frequency(wave.branch, ks[j]);
            prop_assert!((fk - (dk - 2.0 * ck)).abs() < 1e-9);
            prop_assert!((fw - (dw - 2.0 * cw)).abs() < 1e-9 * (1.0 + dw.abs() + cw.abs()));
        }
    }
}
