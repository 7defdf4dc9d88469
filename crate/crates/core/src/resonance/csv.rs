use std::io::Write;

use super::ManifoldPoint;
use crate::error::Result;

/// Writes `k1,..,kn,residual_k,residual_w,branch` rows with full precision.
pub fn write_points_csv<W: Write>(
    mut out: W,
    points: &[ManifoldPoint],
    arity: usize,
) -> Result<()> {
    let mut header: Vec<String> = (1..=arity).map(|i| format!("k{i}")).collect();
    header.extend(["residual_k", "residual_w", "branch"].map(String::from));
    writeln!(out, "{}", header.join(","))?;
    for p in points {
        for k in &p.ks {
            write!(out, "{k:.16e},")?;
        }
        writeln!(
            out,
            "{:.16e},{:.16e},{}",
            p.residual_k, p.residual_w, p.branch_tag
        )?;
    }
    Ok(())
}
