//! Rank of the linear web {x, y, x+y, x-y} and of two resonance manifolds.

use resonance_screen::degeneracy::{
    build_collocation, degeneracy_verdict, rank_analyze, BasisKind, Mode, RankSettings,
};
use resonance_screen::poly::Polynomial;
use resonance_screen::resonance::{BranchTag, Sign, Wave};
use resonance_screen::{
    Branch, Config, ManifoldPoint, ProcessId, ResonanceProcess, SystemParams, WaveSystem,
};

fn main() -> resonance_screen::Result<()> {
    let web = ResonanceProcess::new(
        "web",
        (0..4)
            .map(|_| Wave::new(Sign::Plus, Branch::Short))
            .collect(),
    )?;
    let points: Vec<ManifoldPoint> = (0..500)
        .map(|i| {
            let x = -1.0 + 2.0 * (i as f64 * 0.618_033_988_7).fract();
            let y = -1.0 + 2.0 * (i as f64 * 0.754_877_666_2).fract();
            ManifoldPoint {
                ks: vec![x, y, x + y, x - y],
                residual_k: 0.0,
                residual_w: 0.0,
                branch_tag: BranchTag::Root(0),
            }
        })
        .collect();
    let m = build_collocation(&points, &web, BasisKind::Chebyshev, 4, Mode::Web)?;
    let lin = |c: [f64; 4]| -> Vec<Polynomial> {
        c.iter().map(|&a| Polynomial::new(vec![0.0, a])).collect()
    };
    let known = vec![
        (
            "x+y".to_string(),
            m.relation_vector(&lin([1.0, 1.0, -1.0, 0.0]))?,
        ),
        (
            "x-y".to_string(),
            m.relation_vector(&lin([1.0, -1.0, 0.0, -1.0]))?,
        ),
    ];
    let r = rank_analyze(&m, &known, &RankSettings::default())?;
    println!(
        "linear web: null_dim={} beyond_known={} {:?}",
        r.null_dim, r.n_beyond_known, r.verdict
    );

    let cfg = Config {
        points: 800,
        ..Config::default()
    };
    for (label, params) in [
        ("alpha=gamma", SystemParams::new(1.0, 1.0, 1.0)),
        ("generic", SystemParams::new(2.0, 1.0, -1.0)),
    ] {
        let r = degeneracy_verdict(
            &ProcessId::CkCal1.process(),
            &WaveSystem::kdv_ckdv(params),
            &cfg,
        )?;
        let web = r.web.as_ref().map(|w| w.n_beyond_known);
        let tied = r.tied.as_ref().map(|t| t.n_beyond_known);
        println!(
            "ck_cal1 {label}: web beyond={web:?} tied beyond={tied:?} {:?}",
            r.verdict
        );
    }
    Ok(())
}
