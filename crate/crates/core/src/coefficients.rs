//! Cubic Hamiltonian kernels, the near-identity transformation kernels that
//! remove them, and the four-wave interaction coefficients left behind.
//!
//! Delta factors are never evaluated: callers pass wavenumbers that already
//! satisfy the kernel's linear constraint.

use std::f64::consts::PI;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::dispersion::{mismatch_unchecked, SystemId, SystemParams, WaveSystem};
use crate::error::{Error, Result};
use crate::resonance::{
    param_m1_kdvckdv, param_m3_nlskdv, Interval, ManifoldPoint, PlusMinus, ProcessId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientStatus {
    Finite,
    /// Numerator and denominator both vanish; the value is taken as 0.
    RemovableZero,
    /// Denominator vanishes, numerator does not. The value is NaN.
    Pole,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientValue {
    pub value: f64,
    pub status: CoefficientStatus,
}

impl CoefficientValue {
    pub fn finite(value: f64) -> Self {
        Self {
            value,
            status: CoefficientStatus::Finite,
        }
    }

    pub fn removable_zero() -> Self {
        Self {
            value: 0.0,
            status: CoefficientStatus::RemovableZero,
        }
    }

    pub fn pole() -> Self {
        Self {
            value: f64::NAN,
            status: CoefficientStatus::Pole,
        }
    }

    pub fn is_pole(&self) -> bool {
        self.status == CoefficientStatus::Pole
    }

    /// Sum of terms: a pole anywhere poisons the sum, and a sum of removable
    /// zeros stays a removable zero.
    pub fn sum<I: IntoIterator<Item = CoefficientValue>>(terms: I) -> Self {
        let mut total = 0.0;
        let mut all_removable = true;
        for t in terms {
            match t.status {
                CoefficientStatus::Pole => return Self::pole(),
                CoefficientStatus::RemovableZero => {}
                CoefficientStatus::Finite => {
                    all_removable = false;
                    total += t.value;
                }
            }
        }
        if all_removable {
            Self::removable_zero()
        } else {
            Self::finite(total)
        }
    }
}

/// Thresholds for [`guarded_ratio`] and the on-manifold check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSettings {
    pub eps_den: f64,
    pub eps_num: f64,
    pub tol_res: f64,
}

impl CoefficientSettings {
    pub fn from_config(cfg: &Config) -> Self {
        Self {
            eps_den: cfg.eps_den,
            eps_num: cfg.eps_num,
            tol_res: cfg.tol_res,
        }
    }

    pub fn ratio(&self, num: f64, den: f64) -> CoefficientValue {
        if den.abs() >= self.eps_den {
            CoefficientValue::finite(num / den)
        } else if num.abs() < self.eps_num {
            CoefficientValue::removable_zero()
        } else {
            CoefficientValue::pole()
        }
    }
}

impl Default for CoefficientSettings {
    fn default() -> Self {
        Self::from_config(&Config::default())
    }
}

/// `num / den` with the default thresholds.
pub fn guarded_ratio(num: f64, den: f64) -> CoefficientValue {
    CoefficientSettings::default().ratio(num, den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelId {
    #[serde(rename = "U_nls")]
    UNls,
    #[serde(rename = "V_nls")]
    VNls,
    #[serde(rename = "W_nls")]
    WNls,
    #[serde(rename = "U1_nls")]
    U1Nls,
    #[serde(rename = "U2_nls")]
    U2Nls,
    #[serde(rename = "V_ck")]
    VCk,
    #[serde(rename = "U_ck")]
    UCk,
    #[serde(rename = "A1_ck")]
    A1Ck,
    #[serde(rename = "B1_ck")]
    B1Ck,
    #[serde(rename = "B2_ck")]
    B2Ck,
    #[serde(rename = "T_nls")]
    TNls,
    #[serde(rename = "T1_nls")]
    T1Nls,
    #[serde(rename = "T2_nls")]
    T2Nls,
    #[serde(rename = "P1_ck")]
    P1Ck,
    #[serde(rename = "S1_ck")]
    S1Ck,
    #[serde(rename = "T1_ck")]
    T1Ck,
}

impl KernelId {
    pub const ALL: [KernelId; 16] = [
        KernelId::UNls,
        KernelId::VNls,
        KernelId::WNls,
        KernelId::U1Nls,
        KernelId::U2Nls,
        KernelId::VCk,
        KernelId::UCk,
        KernelId::A1Ck,
        KernelId::B1Ck,
        KernelId::B2Ck,
        KernelId::TNls,
        KernelId::T1Nls,
        KernelId::T2Nls,
        KernelId::P1Ck,
        KernelId::S1Ck,
        KernelId::T1Ck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KernelId::UNls => "U_nls",
            KernelId::VNls => "V_nls",
            KernelId::WNls => "W_nls",
            KernelId::U1Nls => "U1_nls",
            KernelId::U2Nls => "U2_nls",
            KernelId::VCk => "V_ck",
            KernelId::UCk => "U_ck",
            KernelId::A1Ck => "A1_ck",
            KernelId::B1Ck => "B1_ck",
            KernelId::B2Ck => "B2_ck",
            KernelId::TNls => "T_nls",
            KernelId::T1Nls => "T1_nls",
            KernelId::T2Nls => "T2_nls",
            KernelId::P1Ck => "P1_ck",
            KernelId::S1Ck => "S1_ck",
            KernelId::T1Ck => "T1_ck",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Argument(format!("unknown kernel `{name}`")))
    }

    pub fn arity(self) -> usize {
        match self {
            KernelId::UNls
            | KernelId::VNls
            | KernelId::U1Nls
            | KernelId::U2Nls
            | KernelId::VCk
            | KernelId::UCk
            | KernelId::A1Ck
            | KernelId::B1Ck
            | KernelId::B2Ck => 3,
            _ => 4,
        }
    }

    pub fn system(self) -> SystemId {
        match self {
            KernelId::UNls
            | KernelId::VNls
            | KernelId::WNls
            | KernelId::U1Nls
            | KernelId::U2Nls
            | KernelId::TNls
            | KernelId::T1Nls
            | KernelId::T2Nls => SystemId::NlsKdv,
            _ => SystemId::KdvCkdv,
        }
    }

    /// The manifold on which this kernel's denominator can vanish, or on
    /// which the coefficient is defined.
    pub fn process(self) -> ProcessId {
        match self {
            KernelId::UNls | KernelId::U1Nls => ProcessId::NlsM1,
            KernelId::VNls | KernelId::U2Nls => ProcessId::NlsM2,
            KernelId::WNls | KernelId::TNls | KernelId::T1Nls | KernelId::T2Nls => ProcessId::NlsM3,
            KernelId::VCk | KernelId::A1Ck => ProcessId::CkM1,
            KernelId::B1Ck => ProcessId::CkM2,
            KernelId::UCk | KernelId::B2Ck => ProcessId::CkM3,
            KernelId::P1Ck | KernelId::S1Ck | KernelId::T1Ck => ProcessId::CkCal1,
        }
    }
}

/// `theta(-k)`, with `theta(0) = 1`.
fn neg(k: f64) -> f64 {
    if k <= 0.0 {
        1.0
    } else {
        0.0
    }
}

fn sqrt_2pi() -> f64 {
    (2.0 * PI).sqrt()
}

pub(crate) fn u_nls(k1: f64, k2: f64, k3: f64, p: SystemParams) -> f64 {
    -p.gamma / (2.0 * sqrt_2pi()) * (k1 * k2 * k3).abs().sqrt() * neg(k1) * neg(k2) * neg(k3)
}

pub(crate) fn v_nls(_k1: f64, k2: f64, _k3: f64, p: SystemParams) -> f64 {
    -p.beta / sqrt_2pi() * k2.abs().sqrt() * neg(k2)
}

pub(crate) fn v_ck(k1: f64, k2: f64, k3: f64, p: SystemParams) -> f64 {
    -p.beta / (2.0 * sqrt_2pi()) * (k1 * k2 * k3).abs().sqrt() * neg(k1) * neg(k2) * neg(k3)
}

pub(crate) fn u_ck(k1: f64, k2: f64, k3: f64, p: SystemParams) -> f64 {
    4.0 * v_ck(k1, k2, k3, p)
}

/// The quartic NLS self-interaction kernel, a constant.
pub fn w_nls(params: SystemParams) -> f64 {
    -params.alpha / (4.0 * PI)
}

fn expect_arity(id: KernelId, ks: &[f64], n: usize) -> Result<()> {
    if ks.len() != n {
        return Err(Error::Argument(format!(
            "{} takes {n} wavenumbers, got {}",
            id.name(),
            ks.len()
        )));
    }
    Ok(())
}

/// Cubic kernels `U_nls`, `V_nls`, `V_ck`, `U_ck` at `(k1, k2, k3)`.
pub fn kernel3(id: KernelId, ks: &[f64], params: SystemParams) -> Result<f64> {
    expect_arity(id, ks, 3)?;
    let (k1, k2, k3) = (ks[0], ks[1], ks[2]);
    match id {
        KernelId::UNls => Ok(u_nls(k1, k2, k3, params)),
        KernelId::VNls => Ok(v_nls(k1, k2, k3, params)),
        KernelId::VCk => Ok(v_ck(k1, k2, k3, params)),
        KernelId::UCk => Ok(u_ck(k1, k2, k3, params)),
        other => Err(Error::Argument(format!(
            "{} is not a cubic kernel",
            other.name()
        ))),
    }
}

/// `W_nls` as a function of four wavenumbers (it does not depend on them).
pub fn kernel4(id: KernelId, ks: &[f64], params: SystemParams) -> Result<f64> {
    expect_arity(id, ks, 4)?;
    match id {
        KernelId::WNls => Ok(w_nls(params)),
        other => Err(Error::Argument(format!(
            "{} is not a quartic kernel",
            other.name()
        ))),
    }
}

fn system_for(id: KernelId, params: SystemParams) -> WaveSystem {
    match id.system() {
        SystemId::NlsKdv => WaveSystem::nls_kdv(params),
        _ => WaveSystem::kdv_ckdv(params),
    }
}

/// Transformation kernels `U1_nls`, `U2_nls`, `A1_ck`, `B1_ck`, `B2_ck`:
/// minus the cubic kernel over the three-wave frequency mismatch.
pub fn transform_kernel(
    id: KernelId,
    ks: &[f64],
    system: &WaveSystem,
    settings: &CoefficientSettings,
) -> Result<CoefficientValue> {
    expect_arity(id, ks, 3)?;
    if !matches!(
        id,
        KernelId::U1Nls | KernelId::U2Nls | KernelId::A1Ck | KernelId::B1Ck | KernelId::B2Ck
    ) {
        return Err(Error::Argument(format!(
            "{} is not a transformation kernel",
            id.name()
        )));
    }
    if system.id != id.system() {
        return Err(Error::Argument(format!(
            "{} belongs to the {} system",
            id.name(),
            id.system().name()
        )));
    }
    let process = id.process().process();
    let (dk, dw) = mismatch_unchecked(&process, system, ks);
    if dk.abs() > settings.tol_res {
        return Err(Error::Argument(format!(
            "{} needs wavenumbers on its linear constraint; mismatch {dk:e}",
            id.name()
        )));
    }
    let p = system.params;
    let (k1, k2, k3) = (ks[0], ks[1], ks[2]);
    let num = match id {
        KernelId::U1Nls => u_nls(k1, k2, k3, p),
        KernelId::U2Nls => v_nls(k1, k2, k3, p),
        KernelId::A1Ck => v_ck(k1, k2, k3, p),
        _ => u_ck(k1, k2, k3, p),
    };
    Ok(settings.ratio(-num, dw))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermValue {
    pub label: String,
    pub value: CoefficientValue,
}

/// A four-wave coefficient with its two printed parts and every term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitCoefficient {
    pub total: CoefficientValue,
    /// `T1` for the NLS-KdV coefficient, `P1` for the KdV-CKdV one.
    pub first: CoefficientValue,
    /// `T2` for the NLS-KdV coefficient, `S1` for the KdV-CKdV one.
    pub second: CoefficientValue,
    pub terms: Vec<TermValue>,
    /// Whether the wavenumbers were on the manifold within `tol_res`.
    pub on_manifold: bool,
}

fn split(
    first_terms: Vec<TermValue>,
    second_terms: Vec<TermValue>,
    on_manifold: bool,
) -> SplitCoefficient {
    let first = CoefficientValue::sum(first_terms.iter().map(|t| t.value));
    let second = CoefficientValue::sum(second_terms.iter().map(|t| t.value));
    let total = CoefficientValue::sum([first, second]);
    let mut terms = first_terms;
    terms.extend(second_terms);
    SplitCoefficient {
        total,
        first,
        second,
        terms,
        on_manifold,
    }
}

fn term(label: &str, value: CoefficientValue) -> TermValue {
    TermValue {
        label: label.to_string(),
        value,
    }
}

fn on_manifold(id: ProcessId, system: &WaveSystem, ks: &[f64], tol: f64) -> bool {
    let (dk, dw) = mismatch_unchecked(&id.process(), system, ks);
    dk.abs() <= tol && dw.abs() <= tol
}

/// The NLS-KdV four-wave coefficient `T = T1 + T2` on the manifold
/// `k1+k2 = k3+k4`, `om1+Om2 = om3+Om4`.
pub fn t_nls(
    ks: &[f64],
    params: SystemParams,
    settings: &CoefficientSettings,
) -> Result<SplitCoefficient> {
    expect_arity(KernelId::TNls, ks, 4)?;
    let (k1, k2, k3, k4) = (ks[0], ks[1], ks[2], ks[3]);
    let w = |k: f64| k * k;
    let o = |k: f64| -k * k * k;
    let u = |a, b, c| u_nls(a, b, c, params);
    let v = |a, b, c| v_nls(a, b, c, params);
    let r = |n, d| settings.ratio(n, d);

    let t1 = vec![
        term(
            "T1.a",
            r(
                2.0 * v(k3 + k4, k4, k3) * v(k1 + k2, k2, k1),
                w(k1) + o(k2) - w(k1 + k2),
            ),
        ),
        term(
            "T1.b",
            r(
                2.0 * v(k1, k4, k1 - k4) * v(k3, k2, k3 - k2),
                w(k1) - o(k4) - w(k1 - k4),
            ),
        ),
        term(
            "T1.c",
            r(
                4.0 * v(k1, k1 - k3, k3) * u(k4, k2, k4 - k2),
                o(k4) - o(k2) - o(k4 - k2),
            ),
        ),
        term(
            "T1.d",
            r(
                4.0 * v(k3, k3 - k1, k1) * u(k4, k2, k2 - k4),
                o(k2) - o(k4) - o(k2 - k4),
            ),
        ),
    ];
    let t2 = vec![
        term(
            "T2.a",
            r(
                w(k1 + k2) * v(k4 + k3, k4, k3) * v(k1 + k2, k2, k1),
                (w(k4 + k3) - o(k4) - w(k3)) * (w(k2 + k1) - o(k2) - w(k1)),
            ),
        ),
        term(
            "T2.b",
            r(
                w(k3 - k2) * v(k3, k2, k3 - k2) * v(k1, k4, k1 - k4),
                (w(k3) - o(k2) - w(k3 - k2)) * (w(k1) - o(k4) - w(k1 - k4)),
            ),
        ),
        term(
            "T2.c",
            r(
                2.0 * o(k4 - k2) * u(k4, k2, k4 - k2) * v(k1, k1 - k3, k3),
                (o(k4) - o(k2) - o(k4 - k2)) * (w(k1) - o(k1 - k3) - w(k3)),
            ),
        ),
        term(
            "T2.d",
            r(
                2.0 * o(k2 - k4) * u(k2, k4, k2 - k4) * v(k3, k3 - k1, k1),
                (o(k2) - o(k4) - o(k2 - k4)) * (w(k3) - o(k3 - k1) - w(k1)),
            ),
        ),
    ];
    let on = on_manifold(
        ProcessId::NlsM3,
        &WaveSystem::nls_kdv(params),
        ks,
        settings.tol_res,
    );
    Ok(split(t1, t2, on))
}

/// The KdV-CKdV four-wave coefficient `T1 = P1 + S1` on the manifold
/// `k1 = k2+k3+k4`, `om1 = Om2+om3+Om4`.
pub fn t1_ck(
    ks: &[f64],
    params: SystemParams,
    settings: &CoefficientSettings,
) -> Result<SplitCoefficient> {
    expect_arity(KernelId::T1Ck, ks, 4)?;
    let (k1, k2, k3, k4) = (ks[0], ks[1], ks[2], ks[3]);
    let SystemParams { alpha, beta, gamma } = params;
    let w = |k: f64| 2.0 * beta * k - alpha * k * k * k;
    let o = |k: f64| beta * k - gamma * k * k * k;
    let u = |a, b, c| u_ck(a, b, c, params);
    let v = |a, b, c| v_ck(a, b, c, params);
    let r = |n, d| settings.ratio(n, d);

    let p1 = vec![
        term(
            "P1.a",
            r(
                -o(k1 - k3) * u(k1, k1 - k3, k3) * v(k2 + k4, k2, k4),
                (w(k1) - o(k1 - k3) - w(k3)) * (o(k2 + k4) - o(k2) - o(k4)),
            ),
        ),
        term(
            "P1.b",
            r(
                -w(k1 - k2) * u(k1, k2, k1 - k2) * u(k3 + k4, k3, k4),
                (w(k1) - o(k2) - w(k1 - k2)) * (w(k3 + k4) - o(k4) - w(k3)),
            ),
        ),
    ];
    let s1 = vec![
        term(
            "S1.a",
            r(
                2.0 * u(k2 + k3, k2, k3) * u(k1, k4, k1 - k4),
                w(k1) - o(k4) - w(k1 - k4),
            ),
        ),
        term(
            "S1.b",
            r(
                2.0 * v(k2 + k4, k2, k4) * u(k1, k1 - k3, k3),
                w(k1) - o(k1 - k3) - w(k3),
            ),
        ),
    ];
    let on = on_manifold(
        ProcessId::CkCal1,
        &WaveSystem::kdv_ckdv(params),
        ks,
        settings.tol_res,
    );
    Ok(split(p1, s1, on))
}

/// Any kernel or coefficient by id. Cubic and quartic kernels are reported
/// as finite values.
pub fn evaluate(
    id: KernelId,
    ks: &[f64],
    params: SystemParams,
    settings: &CoefficientSettings,
) -> Result<CoefficientValue> {
    match id {
        KernelId::UNls | KernelId::VNls | KernelId::VCk | KernelId::UCk => {
            Ok(CoefficientValue::finite(kernel3(id, ks, params)?))
        }
        KernelId::WNls => Ok(CoefficientValue::finite(kernel4(id, ks, params)?)),
        KernelId::U1Nls | KernelId::U2Nls | KernelId::A1Ck | KernelId::B1Ck | KernelId::B2Ck => {
            transform_kernel(id, ks, &system_for(id, params), settings)
        }
        KernelId::TNls => Ok(t_nls(ks, params, settings)?.total),
        KernelId::T1Nls => Ok(t_nls(ks, params, settings)?.first),
        KernelId::T2Nls => Ok(t_nls(ks, params, settings)?.second),
        KernelId::T1Ck => Ok(t1_ck(ks, params, settings)?.total),
        KernelId::P1Ck => Ok(t1_ck(ks, params, settings)?.first),
        KernelId::S1Ck => Ok(t1_ck(ks, params, settings)?.second),
    }
}

/// One row of a coefficient dump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub ks: Vec<f64>,
    pub value: CoefficientValue,
    pub part: String,
}

/// Writes `k1,k2,k3,k4,value,status,part` rows; `k4` is left empty for
/// three-wave rows.
pub fn write_coefficient_csv<W: Write>(mut out: W, rows: &[CoefficientRow]) -> Result<()> {
    writeln!(out, "k1,k2,k3,k4,value,status,part")?;
    for row in rows {
        for j in 0..4 {
            match row.ks.get(j) {
                Some(k) => write!(out, "{k:.16e},")?,
                None => write!(out, ",")?,
            }
        }
        let status = match row.value.status {
            CoefficientStatus::Finite => "finite",
            CoefficientStatus::RemovableZero => "removable_zero",
            CoefficientStatus::Pole => "pole",
        };
        writeln!(out, "{:.16e},{status},{}", row.value.value, row.part)?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaOrder {
    /// `alpha < gamma`
    AboveAlpha,
    /// `alpha > gamma`
    BelowAlpha,
}

/// Open parameter box with an optional ordering of `alpha` and `gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamRegion {
    pub alpha: Interval,
    pub beta: Interval,
    pub gamma: Interval,
    pub order: Option<GammaOrder>,
}

impl ParamRegion {
    /// `{alpha < 0, beta > 0, alpha < gamma < 0}` cut to `|.| < 2`.
    pub fn negative_region() -> Self {
        Self {
            alpha: Interval::new(-2.0, 0.0),
            beta: Interval::new(0.0, 2.0),
            gamma: Interval::new(-2.0, 0.0),
            order: Some(GammaOrder::AboveAlpha),
        }
    }

    /// `{alpha > 0, beta < 0, alpha > gamma > 0}` cut to `|.| < 2`.
    pub fn positive_region() -> Self {
        Self {
            alpha: Interval::new(0.0, 2.0),
            beta: Interval::new(-2.0, 0.0),
            gamma: Interval::new(0.0, 2.0),
            order: Some(GammaOrder::BelowAlpha),
        }
    }

    pub fn contains(&self, p: SystemParams) -> bool {
        let open = |i: &Interval, x: f64| i.lo < x && x < i.hi;
        let ordered = match self.order {
            None => true,
            Some(GammaOrder::AboveAlpha) => p.alpha < p.gamma,
            Some(GammaOrder::BelowAlpha) => p.alpha > p.gamma,
        };
        open(&self.alpha, p.alpha)
            && open(&self.beta, p.beta)
            && open(&self.gamma, p.gamma)
            && ordered
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignScanRegion {
    pub params: ParamRegion,
    /// Box for the free wavenumbers `k2`, `k4`.
    pub k_domain: Interval,
    /// Keep only points with every `k_j < 0`.
    pub require_negative: bool,
}

impl SignScanRegion {
    pub fn new(params: ParamRegion, cfg: &Config) -> Self {
        Self {
            params,
            k_domain: Interval::new(cfg.domain[0], -cfg.k_min),
            require_negative: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignVerdict {
    AllNegative,
    AllPositive,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignScan {
    pub verdict: SignVerdict,
    pub min_abs: f64,
    pub valid: usize,
    pub attempts: usize,
    /// Valid points where the coefficient had a pole; they count as mixed.
    pub poles: usize,
}

fn scan_point(
    id: KernelId,
    p: SystemParams,
    k2: f64,
    k4: f64,
    branch: PlusMinus,
) -> Result<Option<ManifoldPoint>> {
    match id.system() {
        SystemId::NlsKdv => Ok(Some(param_m3_nlskdv(k2, k4))),
        _ => param_m1_kdvckdv(k2, k4, p, branch),
    }
}

/// Sign of a four-wave coefficient over random parameters in `region` and
/// random points of its manifold. Points are drawn through the closed-form
/// charts over `(k2, k4)`; a point is valid when it is on the manifold, its
/// wavenumbers clear `k_min` and, if required, are all negative.
pub fn sign_scan(
    id: KernelId,
    region: &SignScanRegion,
    samples: usize,
    seed: u64,
    cfg: &Config,
) -> Result<SignScan> {
    if samples < 100 {
        return Err(Error::Argument(format!(
            "sign scans need at least 100 samples, got {samples}"
        )));
    }
    if id.arity() != 4 {
        return Err(Error::Argument(format!(
            "{} is not a four-wave coefficient",
            id.name()
        )));
    }
    let settings = CoefficientSettings::from_config(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng, i: Interval| {
        if i.width() > 0.0 {
            rng.random_range(i.lo..i.hi)
        } else {
            i.lo
        }
    };
    let budget = samples.saturating_mul(cfg.max_attempts_per_point.max(1));
    let (mut valid, mut attempts, mut poles) = (0, 0, 0);
    let (mut neg, mut pos) = (false, false);
    let mut min_abs = f64::INFINITY;

    while valid < samples && attempts < budget {
        attempts += 1;
        let params = SystemParams::new(
            draw(&mut rng, region.params.alpha),
            draw(&mut rng, region.params.beta),
            draw(&mut rng, region.params.gamma),
        );
        let k2 = draw(&mut rng, region.k_domain);
        let k4 = draw(&mut rng, region.k_domain);
        let branch = if rng.random_bool(0.5) {
            PlusMinus::Plus
        } else {
            PlusMinus::Minus
        };
        if !region.params.contains(params) {
            continue;
        }
        let Some(point) = scan_point(id, params, k2, k4, branch)? else {
            continue;
        };
        let ks = &point.ks;
        if point.max_residual() > cfg.tol_res
            || ks.iter().any(|k| k.abs() < cfg.k_min)
            || (region.require_negative && ks.iter().any(|&k| k >= 0.0))
        {
            continue;
        }
        valid += 1;
        let value = evaluate(id, ks, params, &settings)?;
        match value.status {
            CoefficientStatus::Pole => poles += 1,
            _ => {
                min_abs = min_abs.min(value.value.abs());
                if value.value < 0.0 {
                    neg = true;
                } else if value.value > 0.0 {
                    pos = true;
                } else {
                    (neg, pos) = (true, true);
                }
            }
        }
    }

    if valid == 0 {
        return Err(Error::EmptyRegion(format!(
            "no valid {} points in {attempts} attempts over {region:?}",
            id.name()
        )));
    }
    let verdict = match (neg, pos, poles) {
        (true, false, 0) => SignVerdict::AllNegative,
        (false, true, 0) => SignVerdict::AllPositive,
        _ => SignVerdict::Mixed,
    };
    Ok(SignScan {
        verdict,
        min_abs: if min_abs.is_finite() { min_abs } else { 0.0 },
        valid,
        attempts,
        poles,
    })
}
