use resonance_screen::dispersion::mismatch;
use resonance_screen::resonance::{
    param_m1_kdvckdv, param_m3_nlskdv, sample_manifold, write_points_csv, ChartSelection,
    ManifoldChart, PlusMinus,
};
use resonance_screen::{Config, ProcessId, SystemId, SystemParams, WaveSystem};

fn systems() -> Vec<WaveSystem> {
    vec![
        WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0)),
        WaveSystem::kdv_ckdv(SystemParams::new(2.0, 1.0, -1.0)),
        WaveSystem::kdv_ckdv(SystemParams::new(-1.0, 1.0, -0.5)),
    ]
}

#[test]
fn sampled_points_lie_on_every_builtin_manifold() {
    let cfg = Config::default();
    for system in systems() {
        for id in ProcessId::for_system(system.id) {
            let process = id.process();
            let ChartSelection::Chart(chart) =
                ManifoldChart::select(&process, &system, &cfg).unwrap()
            else {
                continue;
            };
            let sample = sample_manifold(&chart, 200, 3);
            for p in &sample.points {
                let (dk, dw) = mismatch(&process, &system, &p.ks).unwrap();
                assert!(
                    dk.abs() <= cfg.tol_res && dw.abs() <= cfg.tol_res,
                    "{} {:?}",
                    id.name(),
                    p.ks
                );
            }
        }
    }
}

#[test]
fn closed_forms_agree_with_direct_mismatch() {
    let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    let p = param_m3_nlskdv(-1.0, -2.0);
    assert_eq!(p.ks, vec![-4.0, -1.0, -3.0, -2.0]);
    let (dk, dw) = mismatch(&ProcessId::NlsM3.process(), &nls, &p.ks).unwrap();
    assert_eq!((dk, dw), (0.0, 0.0));

    let params = SystemParams::new(1.0, 1.0, 1.0);
    let ck = WaveSystem::kdv_ckdv(params);
    for branch in [PlusMinus::Plus, PlusMinus::Minus] {
        let p = param_m1_kdvckdv(0.5, -0.25, params, branch)
            .unwrap()
            .unwrap();
        let (dk, dw) = mismatch(&ProcessId::CkCal1.process(), &ck, &p.ks).unwrap();
        assert!(dk.abs() < 1e-12 && dw.abs() < 1e-12);
    }
}

#[test]
fn csv_has_one_row_per_point() {
    let cfg = Config::default();
    let system = WaveSystem::kdv_ckdv(SystemParams::new(2.0, 1.0, -1.0));
    let ChartSelection::Chart(chart) =
        ManifoldChart::select(&ProcessId::CkCal1.process(), &system, &cfg).unwrap()
    else {
        panic!("ck_cal1 is a surface here");
    };
    let sample = sample_manifold(&chart, 25, 9);
    let mut out = Vec::new();
    write_points_csv(&mut out, &sample.points, 4).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k1,k2,k3,k4,residual_k,residual_w,branch");
    assert_eq!(lines.len(), 26);
    let first: Vec<f64> = lines[1]
        .split(',')
        .take(4)
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(first, sample.points[0].ks);
}

#[test]
fn custom_systems_have_no_builtin_processes() {
    assert!(ProcessId::for_system(SystemId::Custom).is_empty());
}
