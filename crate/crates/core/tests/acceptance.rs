//! Acceptance criteria, run in order by a plain `main` so that every
//! criterion prints exactly one PASS/FAIL line. The process exits non-zero
//! when any criterion fails.

mod common;

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use resonance_screen::coefficients::{
    kernel3, sign_scan, t_nls, transform_kernel, CoefficientSettings, CoefficientStatus, KernelId,
    ParamRegion, SignScanRegion, SignVerdict,
};
use resonance_screen::degeneracy::{
    analyze_mode, build_collocation, degeneracy_verdict, rank_analyze, BasisKind, Mode,
    RankSettings, RankVerdict,
};
use resonance_screen::dispersion::mismatch;
use resonance_screen::poly::Polynomial;
use resonance_screen::report::{analyze, scan_params, GridAxis, Implication, Overall};
use resonance_screen::resonance::{
    detect_billiard, param_m1_kdvckdv, param_m3_nlskdv, sample_manifold, BranchTag, ChartSelection,
    ChartSolver, Interval, ManifoldChart, PlusMinus, Sign, Wave,
};
use resonance_screen::{
    Branch, Config, ManifoldPoint, ProcessId, ResonanceProcess, SystemParams, WaveSystem,
};

struct Outcome {
    title: &'static str,
    pass: bool,
    detail: String,
}

fn verdict(title: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome {
        title,
        pass,
        detail,
    }
}

fn chart(id: ProcessId, system: &WaveSystem, cfg: &Config) -> ManifoldChart {
    match ManifoldChart::select(&id.process(), system, cfg).unwrap() {
        ChartSelection::Chart(c) => *c,
        ChartSelection::FullManifold => panic!("{} is the full hyperplane", id.name()),
    }
}

fn criterion_01_parameterization_fidelity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    let m3 = ProcessId::NlsM3.process();
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let (k2, k4) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let (dk, dw) = mismatch(&m3, &nls, &param_m3_nlskdv(k2, k4).ks).unwrap();
        worst = worst.max(dk.abs()).max(dw.abs());
    }

    let sets = [
        (1.0, 1.0, 1.0),
        (2.0, 1.0, -1.0),
        (1.0, 3.0, 0.5),
        (0.5, 2.0, 0.25),
        (3.0, 1.0, 2.0),
    ];
    let cal1 = ProcessId::CkCal1.process();
    let mut evaluated = 0;
    for (a, b, g) in sets {
        let params = SystemParams::new(a, b, g);
        let system = WaveSystem::kdv_ckdv(params);
        for _ in 0..10_000 {
            let (k2, k4) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            for branch in [PlusMinus::Plus, PlusMinus::Minus] {
                if let Some(p) = param_m1_kdvckdv(k2, k4, params, branch).unwrap() {
                    let (dk, dw) = mismatch(&cal1, &system, &p.ks).unwrap();
                    worst = worst.max(dk.abs()).max(dw.abs());
                    evaluated += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "parameterization fidelity",
        worst < 1e-12 && elapsed < 1.0 && evaluated > 0,
        format!("max residual {worst:.2e}, {evaluated} calM1 points, {elapsed:.3} s"),
    )
}

fn criterion_02_removable_singularities() -> Outcome {
    let cfg = Config::default();
    let settings = CoefficientSettings::from_config(&cfg);
    let system = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    let params = system.params;

    let m1 = sample_manifold(&chart(ProcessId::NlsM1, &system, &cfg), 1000, cfg.seed);
    let u_nonzero = m1
        .points
        .iter()
        .filter(|p| kernel3(KernelId::UNls, &p.ks, params).unwrap() != 0.0)
        .count();
    let u1_poles = m1
        .points
        .iter()
        .filter(|p| {
            transform_kernel(KernelId::U1Nls, &p.ks, &system, &settings)
                .unwrap()
                .is_pole()
        })
        .count();

    let m2 = sample_manifold(&chart(ProcessId::NlsM2, &system, &cfg), 1000, cfg.seed);
    let v_nonzero = m2
        .points
        .iter()
        .filter(|p| kernel3(KernelId::VNls, &p.ks, params).unwrap() != 0.0)
        .count();
    let u2_poles = m2
        .points
        .iter()
        .filter(|p| {
            transform_kernel(KernelId::U2Nls, &p.ks, &system, &settings)
                .unwrap()
                .is_pole()
        })
        .count();

    verdict("removable singularities",
        m1.points.len() == 1000 && m2.points.len() == 1000 && u_nonzero + v_nonzero + u1_poles + u2_poles == 0,
        format!(
            "M1: U != 0 at {u_nonzero}/{}, U1 poles {u1_poles}; M2: V != 0 at {v_nonzero}/{}, U2 poles {u2_poles}",
            m1.points.len(),
            m2.points.len()
        ),
    )
}

fn criterion_03_coefficient_oracle() -> Outcome {
    let cfg = Config::default();
    let settings = CoefficientSettings::from_config(&cfg);
    let params = SystemParams::new(1.0, 1.0, 1.0);
    let system = WaveSystem::nls_kdv(params);
    // The coefficient is switched off unless both long waves are negative.
    let negative = Interval::new(cfg.domain[0], -cfg.k_min);
    let c = chart(ProcessId::NlsM3, &system, &cfg)
        .with_domain(vec![negative, negative])
        .unwrap();
    let sample = sample_manifold(&c, 100, cfg.seed);

    let mut worst_rel: f64 = 0.0;
    let mut oracle_skipped = 0;
    let mut nonzero = 0;
    for p in &sample.points {
        let t = t_nls(&p.ks, params, &settings).unwrap();
        if t.total.status == CoefficientStatus::Finite && t.total.value.abs() > 1e-6 {
            nonzero += 1;
        }
        match common::t_oracle(&p.ks, params.alpha, params.beta, params.gamma) {
            Some(expected) => {
                let rel = (t.total.value - expected).abs() / expected.abs().max(f64::MIN_POSITIVE);
                worst_rel = worst_rel.max(if t.total.value == expected { 0.0 } else { rel });
            }
            None => oracle_skipped += 1,
        }
    }

    let full = sample_manifold(&chart(ProcessId::NlsM3, &system, &cfg), 100, cfg.seed);
    let full_nonzero = full
        .points
        .iter()
        .filter(|p| t_nls(&p.ks, params, &settings).unwrap().total.value.abs() > 1e-6)
        .count();

    verdict("coefficient oracle",
        sample.points.len() == 100 && oracle_skipped == 0 && worst_rel < 1e-9 && nonzero >= 99,
        format!(
            "max rel err {worst_rel:.2e}, |T| > 1e-6 at {nonzero}/100 (k2,k4 < 0), {full_nonzero}/100 over the full box"
        ),
    )
}

fn criterion_04_sign_regions() -> Outcome {
    let start = Instant::now();
    let cfg = Config::default();
    let mut lines = Vec::new();
    let mut pass = true;
    for (label, region, want) in [
        (
            "A1",
            ParamRegion::negative_region(),
            SignVerdict::AllNegative,
        ),
        (
            "A2",
            ParamRegion::positive_region(),
            SignVerdict::AllPositive,
        ),
    ] {
        let region = SignScanRegion::new(region, &cfg);
        for id in [KernelId::P1Ck, KernelId::S1Ck] {
            match sign_scan(id, &region, 1000, cfg.seed, &cfg) {
                Ok(s) => {
                    pass &= s.verdict == want && s.min_abs > 0.0 && s.valid >= 1000;
                    lines.push(format!(
                        "{label} {}: {:?} min_abs {:.2e}",
                        id.name(),
                        s.verdict,
                        s.min_abs
                    ));
                }
                Err(e) => {
                    pass = false;
                    let reason = e.to_string();
                    let reason = reason.split(':').next().unwrap_or_default().to_string();
                    lines.push(format!("{label} {}: {reason}", id.name()));
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "sign regions",
        pass && elapsed < 10.0,
        format!("{}; {elapsed:.2} s", lines.join("; ")),
    )
}

fn criterion_05_rank_solver_oracle() -> Outcome {
    let process = ResonanceProcess::new(
        "web",
        (0..4)
            .map(|_| Wave::new(Sign::Plus, Branch::Short))
            .collect(),
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let points: Vec<ManifoldPoint> = (0..500)
        .map(|_| {
            let (x, y): (f64, f64) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            ManifoldPoint {
                ks: vec![x, y, x + y, x - y],
                residual_k: 0.0,
                residual_w: 0.0,
                branch_tag: BranchTag::Root(0),
            }
        })
        .collect();
    let m = build_collocation(&points, &process, BasisKind::Chebyshev, 4, Mode::Web).unwrap();
    let lin = |c: [f64; 4]| -> Vec<Polynomial> {
        c.iter().map(|&a| Polynomial::new(vec![0.0, a])).collect()
    };
    let known = vec![
        (
            "x+y".to_string(),
            m.relation_vector(&lin([1.0, 1.0, -1.0, 0.0])).unwrap(),
        ),
        (
            "x-y".to_string(),
            m.relation_vector(&lin([1.0, -1.0, 0.0, -1.0])).unwrap(),
        ),
    ];
    let r = rank_analyze(&m, &known, &RankSettings::default()).unwrap();
    let residual = r
        .extra_relations
        .first()
        .map_or(f64::INFINITY, |e| e.residual_norm);
    // Up to the known linear relations, the extra one is the quadratic identity.
    let quadratic = r.extra_relations.first().is_some_and(|e| {
        e.functions
            .iter()
            .all(|f| f[3].abs() < 1e-6 && f[4].abs() < 1e-6)
    });
    verdict(
        "rank solver oracle",
        r.null_dim == 3 && r.n_known == 2 && r.n_beyond_known == 1 && residual < 1e-8 && quadratic,
        format!(
            "null dim {}, known {}, extra residual {residual:.2e}",
            r.null_dim, r.n_known
        ),
    )
}

fn criterion_06_nondegeneracy_verdicts() -> Outcome {
    let cases = [
        (
            ProcessId::NlsM3,
            WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0)),
        ),
        (
            ProcessId::CkCal1,
            WaveSystem::kdv_ckdv(SystemParams::new(2.0, 1.0, -1.0)),
        ),
    ];
    let mut failures = Vec::new();
    let mut runs = 0;
    for (id, system) in &cases {
        for degree in [4, 6, 8] {
            for seed in [7, 11] {
                for basis in [BasisKind::Chebyshev, BasisKind::Monomial] {
                    let cfg = Config {
                        degree,
                        seed,
                        basis,
                        ..Config::default()
                    };
                    let r = degeneracy_verdict(&id.process(), system, &cfg).unwrap();
                    runs += 1;
                    if r.verdict != Some(RankVerdict::NondegenerateRank2) {
                        failures.push(format!(
                            "{} D={degree} seed={seed} {basis:?}: {:?}",
                            id.name(),
                            r.verdict
                        ));
                    }
                }
            }
        }
    }
    verdict(
        "nondegeneracy verdicts",
        failures.is_empty(),
        format!("{runs} runs, failures {failures:?}"),
    )
}

fn criterion_07_special_cases() -> Outcome {
    let start = Instant::now();
    let cfg = Config::default();
    let mut notes = Vec::new();
    let mut pass = true;

    for (a, g) in [(1.0, 1.0), (0.0, 1.0), (1.0, 0.0)] {
        let system = WaveSystem::kdv_ckdv(SystemParams::new(a, 1.0, g));
        let c = chart(ProcessId::CkCal1, &system, &cfg);
        if a == 0.0 {
            pass &= c.solver() == ChartSolver::GenericPoly;
        }
        let process = ProcessId::CkCal1.process();
        let r = degeneracy_verdict(&process, &system, &cfg).unwrap();
        let sample = sample_manifold(&c, cfg.points, cfg.seed);
        let tied = analyze_mode(&sample.points, &process, &system, &cfg, Mode::Tied).unwrap();
        let tied_extra = tied.conclusive
            && tied
                .extra_relations
                .first()
                .is_some_and(|e| e.residual_norm < 1e-6)
            && tied.n_beyond_known >= 1;
        let ok = matches!(r.verdict, Some(RankVerdict::DegenerateRank3Plus)) || tied_extra;
        pass &= ok;
        notes.push(format!(
            "(a={a}, g={g}): {:?}, tied extra {}",
            r.verdict.unwrap(),
            tied.n_beyond_known
        ));
    }

    let axis = GridAxis::new(-2.0, 2.0, 41).unwrap();
    let scan = scan_params(axis, axis, 1.0, &cfg).unwrap();
    let step = axis.step();
    let near_line = |a: f64, g: f64| {
        a.abs() <= step + 1e-9 || g.abs() <= step + 1e-9 || (a - g).abs() <= step + 1e-9
    };
    let special: Vec<_> = scan
        .cells
        .iter()
        .filter(|c| c.overall == Overall::SpecialCaseOpen || !c.degenerate.is_empty())
        .collect();
    let stray = special
        .iter()
        .filter(|c| !near_line(c.alpha, c.gamma))
        .count();
    let on_lines = scan
        .cells
        .iter()
        .filter(|c| {
            c.alpha.abs() < 1e-9 || c.gamma.abs() < 1e-9 || (c.alpha - c.gamma).abs() < 1e-9
        })
        .all(|c| c.overall == Overall::SpecialCaseOpen);
    pass &= stray == 0 && on_lines && !special.is_empty();
    let elapsed = start.elapsed().as_secs_f64();
    pass &= elapsed < 300.0;
    verdict(
        "special cases",
        pass,
        format!(
            "{}; scan: {} special cells, {stray} off the lines; {elapsed:.1} s",
            notes.join("; "),
            special.len()
        ),
    )
}

fn criterion_08_billiard_detection() -> Outcome {
    let cfg = Config {
        points: 1000,
        ..Config::default()
    };
    let system = common::quadratic_system();
    let process = common::quadratic_process();
    let r = degeneracy_verdict(&process, &system, &cfg).unwrap();

    let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    let base = Config::default();
    let m3 = sample_manifold(
        &chart(ProcessId::NlsM3, &nls, &base),
        base.points,
        base.seed,
    );
    let nls_fraction = detect_billiard(
        &m3.points,
        &ProcessId::NlsM3.process(),
        &nls,
        base.billiard_tol,
    )
    .unwrap();

    verdict(
        "billiard detection",
        r.points == 1000
            && r.billiard_fraction == Some(1.0)
            && r.verdict == Some(RankVerdict::BilliardInfiniteRank)
            && nls_fraction < 0.05,
        format!(
            "quadratic fraction {:?} {:?}; nls-M3 fraction {nls_fraction}",
            r.billiard_fraction, r.verdict
        ),
    )
}

fn criterion_09_three_wave_structure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let process = ProcessId::CkM1.process();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let params = SystemParams::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let system = WaveSystem::kdv_ckdv(params);
        let (k2, k3): (f64, f64) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let k1 = k2 + k3;
        let (_, dw) = mismatch(&process, &system, &[k1, k2, k3]).unwrap();
        worst = worst.max((dw + 3.0 * params.gamma * k1 * k2 * k3).abs());
    }

    let flat = WaveSystem::kdv_ckdv(SystemParams::new(1.0, 1.0, 0.0));
    let cfg = Config::default();
    let full = matches!(
        ManifoldChart::select(&process, &flat, &cfg).unwrap(),
        ChartSelection::FullManifold
    );
    let r = degeneracy_verdict(&process, &flat, &cfg).unwrap();
    verdict(
        "three-wave structure",
        worst < 1e-12 && full && r.verdict == Some(RankVerdict::DegenerateRank3Plus),
        format!(
            "max |dw + 3 gamma k1 k2 k3| {worst:.2e}; gamma=0 full {full}, {:?}",
            r.verdict
        ),
    )
}

fn criterion_10_end_to_end() -> Outcome {
    let cfg = Config::default();
    let nls = analyze(&WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0)), &cfg).unwrap();
    let m3 = nls.finding(ProcessId::NlsM3).map(|f| f.implication);
    let ck = analyze(
        &WaveSystem::kdv_ckdv(SystemParams::new(1.0, 1.0, 1.0)),
        &cfg,
    )
    .unwrap();

    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_resonance-screen"))
            .args([
                "analyze", "--system", "nls-kdv", "--alpha", "1", "--beta", "1", "--gamma", "1",
                "--seed", "7", "--out",
            ])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let identical = run("a.json") == run("b.json");

    verdict(
        "end to end",
        nls.overall == Overall::Nonintegrable
            && m3 == Some(Implication::BlocksIstSolvability)
            && ck.overall == Overall::SpecialCaseOpen
            && identical,
        format!(
            "nls {:?} (M3 {m3:?}), ck {:?}, byte-identical {identical}",
            nls.overall, ck.overall
        ),
    )
}

fn main() {
    let criteria: [fn() -> Outcome; 10] = [
        criterion_01_parameterization_fidelity,
        criterion_02_removable_singularities,
        criterion_03_coefficient_oracle,
        criterion_04_sign_regions,
        criterion_05_rank_solver_oracle,
        criterion_06_nondegeneracy_verdicts,
        criterion_07_special_cases,
        criterion_08_billiard_detection,
        criterion_09_three_wave_structure,
        criterion_10_end_to_end,
    ];
    let mut failed = 0;
    for (i, criterion) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(criterion).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict("panicked", false, msg)
        });
        if !outcome.pass {
            failed += 1;
        }
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {}: {}",
            i + 1,
            outcome.title,
            outcome.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
