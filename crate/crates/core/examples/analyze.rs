//! Full integrability report for NLS-KdV with unit parameters, as JSON.

use resonance_screen::report::{analyze, write_json};
use resonance_screen::{Config, SystemParams, WaveSystem};

fn main() -> resonance_screen::Result<()> {
    let system = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    let report = analyze(&system, &Config::default())?;
    write_json(std::io::stdout().lock(), &report)
}
