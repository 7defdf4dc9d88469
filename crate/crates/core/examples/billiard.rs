//! Billiard fraction of a same-branch quadratic process and of NLS-KdV M3.

use resonance_screen::degeneracy::degeneracy_verdict;
use resonance_screen::resonance::{Sign, Wave};
use resonance_screen::{
    Branch, Config, DispersionLaw, ProcessId, ResonanceProcess, SystemParams, WaveSystem,
};

fn main() -> resonance_screen::Result<()> {
    let cfg = Config {
        points: 1000,
        ..Config::default()
    };
    let quadratic = WaveSystem::custom(
        DispersionLaw::new(vec![0.0, 1.0]),
        DispersionLaw::new(vec![0.0, 1.0]),
    );
    let process = ResonanceProcess::new(
        "quadratic",
        vec![
            Wave::new(Sign::Plus, Branch::Short),
            Wave::new(Sign::Plus, Branch::Short),
            Wave::new(Sign::Minus, Branch::Short),
            Wave::new(Sign::Minus, Branch::Short),
        ],
    )?;
    let r = degeneracy_verdict(&process, &quadratic, &cfg)?;
    println!(
        "quadratic: fraction={:?} {:?}",
        r.billiard_fraction, r.verdict
    );

    let nls = WaveSystem::nls_kdv(SystemParams::new(1.0, 1.0, 1.0));
    let r = degeneracy_verdict(&ProcessId::NlsM3.process(), &nls, &cfg)?;
    println!("nls_m3: fraction={:?} {:?}", r.billiard_fraction, r.verdict);
    Ok(())
}
