//! Signs of P1 and S1 over the two parameter regions.

use resonance_screen::coefficients::{sign_scan, KernelId, ParamRegion, SignScanRegion};
use resonance_screen::Config;

fn main() -> resonance_screen::Result<()> {
    let cfg = Config::default();
    for (name, region) in [
        ("A1", ParamRegion::negative_region()),
        ("A2", ParamRegion::positive_region()),
    ] {
        let region = SignScanRegion::new(region, &cfg);
        for id in [KernelId::P1Ck, KernelId::S1Ck] {
            match sign_scan(id, &region, 1000, cfg.seed, &cfg) {
                Ok(s) => println!(
                    "{name} {}: {:?} min_abs={:e} valid={}",
                    id.name(),
                    s.verdict,
                    s.min_abs,
                    s.valid
                ),
                Err(e) => println!("{name} {}: {e}", id.name()),
            }
        }
    }
    Ok(())
}
