//! Coarse (alpha, gamma) scan of the KdV-CKdV system at beta = 1.

use resonance_screen::report::{scan_params, GridAxis, Overall};
use resonance_screen::Config;

fn main() -> resonance_screen::Result<()> {
    let axis = GridAxis::new(-2.0, 2.0, 9)?;
    let scan = scan_params(axis, axis, 1.0, &Config::default())?;
    println!(
        "rows alpha, columns gamma; X nonintegrable, s special_case_open, . no_obstruction_found"
    );
    for i in 0..axis.n {
        let row: String = (0..axis.n)
            .map(|j| match scan.cell(i, j).overall {
                Overall::Nonintegrable => 'X',
                Overall::SpecialCaseOpen => 's',
                Overall::NoObstructionFound => '.',
            })
            .collect();
        println!("{:5.1} {row}", axis.value(i));
    }
    Ok(())
}
