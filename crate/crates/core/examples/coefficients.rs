//! Cubic kernels, a transformation kernel and the split four-wave coefficients.

use resonance_screen::coefficients::{
    kernel3, t1_ck, t_nls, transform_kernel, CoefficientSettings, KernelId,
};
use resonance_screen::resonance::{param_m1_kdvckdv, param_m3_nlskdv, PlusMinus};
use resonance_screen::{Config, SystemParams, WaveSystem};

fn main() -> resonance_screen::Result<()> {
    let settings = CoefficientSettings::from_config(&Config::default());
    let params = SystemParams::new(1.0, 1.0, 1.0);

    println!(
        "V_nls(-1,-2,1) = {:.6}",
        kernel3(KernelId::VNls, &[-1.0, -2.0, 1.0], params)?
    );
    let u1 = transform_kernel(
        KernelId::U1Nls,
        &[2.0, 0.5, 1.5],
        &WaveSystem::nls_kdv(params),
        &settings,
    )?;
    println!("U1_nls(2,0.5,1.5) = {u1:?}");

    let p = param_m3_nlskdv(-1.0, -2.0);
    let t = t_nls(&p.ks, params, &settings)?;
    println!("T_nls at {:?}: total {:?}", p.ks, t.total);
    for term in &t.terms {
        println!("  {:6} {:?}", term.label, term.value);
    }

    let ck = SystemParams::new(-1.0, 1.0, -2.0);
    if let Some(p) = param_m1_kdvckdv(-1.0, -2.0, ck, PlusMinus::Minus)? {
        let t = t1_ck(&p.ks, ck, &settings)?;
        println!("T1_ck at {:?}: P1 {:?} S1 {:?}", p.ks, t.first, t.second);
    }
    Ok(())
}
