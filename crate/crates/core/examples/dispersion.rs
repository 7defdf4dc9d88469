//! Dispersion laws of the two coupled systems and the mismatch of a triad.

use resonance_screen::{Branch, ProcessId, SystemParams, WaveSystem};

fn main() -> resonance_screen::Result<()> {
    let params = SystemParams::new(1.0, 1.0, 1.0);
    for system in [WaveSystem::nls_kdv(params), WaveSystem::kdv_ckdv(params)] {
        println!("{}", system.id.name());
        for k in [-2.0, -0.5, 0.5, 2.0] {
            println!(
                "  k={k:5.2}  short={:9.4}  long={:9.4}",
                system.frequency(Branch::Short, k),
                system.frequency(Branch::Long, k)
            );
        }
    }
    let ck = WaveSystem::kdv_ckdv(params);
    let (k1, k2) = (1.5, 0.25);
    let (dk, dw) = resonance_screen::dispersion::mismatch(
        &ProcessId::CkM1.process(),
        &ck,
        &[k1, k2, k1 - k2],
    )?;
    println!(
        "ck_m1 at ({k1}, {k2}, {}): dk={dk:e} dw={dw:.6} (-3 gamma k1 k2 k3 = {:.6})",
        k1 - k2,
        -3.0 * k1 * k2 * (k1 - k2)
    );
    Ok(())
}
