use super::{ManifoldPoint, ResonanceProcess};
use crate::dispersion::WaveSystem;
use crate::error::{Error, Result};

const PAIRINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

/// How two waves of a pairing must relate for their contributions to cancel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairRule {
    Equal,
    Opposite,
}

fn pair_rule(
    process: &ResonanceProcess,
    system: &WaveSystem,
    a: usize,
    b: usize,
) -> Option<PairRule> {
    let (wa, wb) = (process.waves()[a], process.waves()[b]);
    if wa.branch != wb.branch {
        return None;
    }
    if wa.sign != wb.sign {
        Some(PairRule::Equal)
    } else if system.law(wa.branch).is_odd() {
        Some(PairRule::Opposite)
    } else {
        None
    }
}

/// Fraction of `points` on which the waves split into two cancelling pairs
/// (`k_a = k_b` across opposite signs, `k_a = -k_b` within a sign for odd
/// laws), each pair on one branch. An empty list gives 0.
pub fn detect_billiard(
    points: &[ManifoldPoint],
    process: &ResonanceProcess,
    system: &WaveSystem,
    tol: f64,
) -> Result<f64> {
    if process.arity() != 4 {
        return Err(Error::UnsupportedArity(process.arity()));
    }
    let rules: Vec<[(usize, usize, PairRule); 2]> = PAIRINGS
        .iter()
        .filter_map(|pairing| {
            let [(a, b), (c, d)] = *pairing;
            Some([
                (a, b, pair_rule(process, system, a, b)?),
                (c, d, pair_rule(process, system, c, d)?),
            ])
        })
        .collect();
    if points.is_empty() {
        return Ok(0.0);
    }
    let matched = points
        .iter()
        .filter(|p| {
            let scale = 1.0 + p.ks.iter().fold(0.0_f64, |m, k| m.max(k.abs()));
            let eps = tol * scale;
            rules.iter().any(|pairing| {
                pairing.iter().all(|&(a, b, rule)| match rule {
                    PairRule::Equal => (p.ks[a] - p.ks[b]).abs() <= eps,
                    PairRule::Opposite => (p.ks[a] + p.ks[b]).abs() <= eps,
                })
            })
        })
        .count();
    Ok(matched as f64 / points.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{DispersionLaw, SystemParams};
    use crate::resonance::{param_m3_nlskdv, BranchTag, ProcessId};

    fn pt(ks: [f64; 4]) -> ManifoldPoint {
        ManifoldPoint {
            ks: ks.to_vec(),
            residual_k: 0.0,
            residual_w: 0.0,
            branch_tag: BranchTag::Root(0),
        }
    }

    #[test]
    fn m3_pairing() {
        let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
        let p = ProcessId::NlsM3.process();
        assert_eq!(
            detect_billiard(&[pt([2.0, -1.0, 2.0, -1.0])], &p, &nls, 1e-9).unwrap(),
            1.0
        );
        assert_eq!(
            detect_billiard(&[param_m3_nlskdv(1.0, 2.0)], &p, &nls, 1e-9).unwrap(),
            0.0
        );
        let half = [pt([1.0, 1.0, 1.0, 1.0]), pt([-3.0, 1.0, -4.0, 2.0])];
        assert_eq!(detect_billiard(&half, &p, &nls, 1e-9).unwrap(), 0.5);
    }

    #[test]
    fn odd_law_same_sign_pairs() {
        let ck = WaveSystem::kdv_ckdv(SystemParams::new(2.0, 1.0, -1.0));
        let p = ProcessId::CkCal1.process();
        assert_eq!(
            detect_billiard(&[pt([0.7, 1.3, 0.7, -1.3])], &p, &ck, 1e-9).unwrap(),
            1.0
        );
        // Same point, but the short branch is not allowed to pair with the long one.
        assert_eq!(
            detect_billiard(&[pt([0.7, 0.7, 1.3, -1.3])], &p, &ck, 1e-9).unwrap(),
            0.0
        );
    }

    #[test]
    fn even_law_same_sign_does_not_pair() {
        let quad = WaveSystem::custom(
            DispersionLaw::new(vec![0.0, 1.0]),
            DispersionLaw::new(vec![0.0, 1.0]),
        );
        let p = ProcessId::CkCal4.process();
        assert_eq!(
            detect_billiard(&[pt([1.0, 2.0, -1.0, -2.0])], &p, &quad, 1e-9).unwrap(),
            0.0
        );
    }

    #[test]
    fn three_waves_unsupported() {
        let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
        assert!(matches!(
            detect_billiard(&[], &ProcessId::NlsM1.process(), &nls, 1e-9),
            Err(Error::UnsupportedArity(3))
        ));
    }
}
