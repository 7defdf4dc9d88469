#![allow(dead_code)]

use std::f64::consts::PI;

use resonance_screen::resonance::{Sign, Wave};
use resonance_screen::{Branch, DispersionLaw, ResonanceProcess, WaveSystem};

fn heaviside(k: f64) -> f64 {
    if k >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// NLS-KdV four-wave coefficient written out term by term with plain
/// division. `None` when a denominator is within `1e-8` of zero.
pub fn t_oracle(ks: &[f64], alpha: f64, beta: f64, gamma: f64) -> Option<f64> {
    let _ = alpha;
    let (k1, k2, k3, k4) = (ks[0], ks[1], ks[2], ks[3]);
    let om = |k: f64| k.powi(2);
    let big = |k: f64| -k.powi(3);
    let u = |a: f64, b: f64, c: f64| {
        -gamma / (2.0 * (2.0 * PI).sqrt())
            * (a * b * c).abs().sqrt()
            * heaviside(-a)
            * heaviside(-b)
            * heaviside(-c)
    };
    let v = |_a: f64, b: f64, _c: f64| -beta / (2.0 * PI).sqrt() * b.abs().sqrt() * heaviside(-b);

    let dens = [
        om(k1) + big(k2) - om(k1 + k2),
        om(k1) - big(k4) - om(k1 - k4),
        big(k4) - big(k2) - big(k4 - k2),
        big(k2) - big(k4) - big(k2 - k4),
        om(k4 + k3) - big(k4) - om(k3),
        om(k2 + k1) - big(k2) - om(k1),
        om(k3) - big(k2) - om(k3 - k2),
        om(k1) - big(k1 - k3) - om(k3),
        om(k3) - big(k3 - k1) - om(k1),
    ];
    if dens.iter().any(|d| d.abs() < 1e-8) {
        return None;
    }

    let t1 = 2.0
        * (v(k3 + k4, k4, k3) * v(k1 + k2, k2, k1) / dens[0]
            + v(k1, k4, k1 - k4) * v(k3, k2, k3 - k2) / dens[1])
        + 4.0
            * (v(k1, k1 - k3, k3) * u(k4, k2, k4 - k2) / dens[2]
                + v(k3, k3 - k1, k1) * u(k4, k2, k2 - k4) / dens[3]);
    let t2 = om(k1 + k2) * v(k4 + k3, k4, k3) * v(k1 + k2, k2, k1) / (dens[4] * dens[5])
        + om(k3 - k2) * v(k3, k2, k3 - k2) * v(k1, k4, k1 - k4) / (dens[6] * dens[1])
        + 2.0 * big(k4 - k2) * u(k4, k2, k4 - k2) * v(k1, k1 - k3, k3) / (dens[2] * dens[7])
        + 2.0 * big(k2 - k4) * u(k2, k4, k2 - k4) * v(k3, k3 - k1, k1) / (dens[3] * dens[8]);
    Some(t1 + t2)
}

/// `omega = k^2` on both branches.
pub fn quadratic_system() -> WaveSystem {
    WaveSystem::custom(
        DispersionLaw::new(vec![0.0, 1.0]),
        DispersionLaw::new(vec![0.0, 1.0]),
    )
}

/// `k1 + k2 = k3 + k4` on one branch.
pub fn quadratic_process() -> ResonanceProcess {
    let w = |s| Wave::new(s, Branch::Short);
    ResonanceProcess::new(
        "quadratic",
        vec![w(Sign::Plus), w(Sign::Plus), w(Sign::Minus), w(Sign::Minus)],
    )
    .unwrap()
}
