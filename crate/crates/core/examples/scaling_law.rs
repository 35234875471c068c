//! Small-radius behavior of the bump norm: `beta(r) ~ r^(d/2 - m)`.

use sobolev_bumps::analysis::{beta_curve, fit_loglog_slope};
use sobolev_bumps::{KernelSpec, QuadratureConfig};

fn main() -> sobolev_bumps::Result<()> {
    let rs: Vec<f64> = (0..9).map(|i| 10f64.powf(-3.0 + 0.25 * i as f64)).collect();
    for (d, m) in [(1, 1.0), (1, 2.0), (2, 1.5), (2, 2.5)] {
        let curve = beta_curve(&KernelSpec::new(d, m)?, &rs, &QuadratureConfig::default())?;
        let pts: Vec<(f64, f64)> = rs.iter().zip(&curve.betas).filter_map(|(r, b)| b.map(|b| (*r, b))).collect();
        println!(
            "d = {d}, m = {m}: slope {:.4} (expected {}), {} monotone violations",
            fit_loglog_slope(&pts).unwrap_or(f64::NAN),
            curve.expected_slope(),
            curve.monotone_violations().len()
        );
    }
    Ok(())
}
