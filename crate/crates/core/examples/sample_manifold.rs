//! Samples the NLS-KdV four-wave manifold and writes it as CSV to stdout.

use resonance_screen::resonance::{
    sample_manifold, write_points_csv, ChartSelection, ManifoldChart,
};
use resonance_screen::{Config, ProcessId, SystemParams, WaveSystem};

fn main() -> resonance_screen::Result<()> {
    let cfg = Config::default();
    let system = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    let process = ProcessId::NlsM3.process();
    let ChartSelection::Chart(chart) = ManifoldChart::select(&process, &system, &cfg)? else {
        unreachable!("nls_m3 is a proper surface");
    };
    let sample = sample_manifold(&chart, 10, cfg.seed);
    eprintln!(
        "{} points after {} attempts via {:?}",
        sample.points.len(),
        sample.attempts,
        chart.solver()
    );
    write_points_csv(std::io::stdout().lock(), &sample.points, process.arity())
}
