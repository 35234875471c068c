//! Point-evaluation representers of the zero-trace space on `[-r, r]`.

use sobolev_bumps::analysis::{representer_check_1d, Function1d};
use sobolev_bumps::translate_1d;

fn main() -> sobolev_bumps::Result<()> {
    let r = 1.0;
    let v = Function1d::wendland(0.1, 0.6, 1.0);
    for x in [-0.66, -0.33, 0.0, 0.33, 0.66] {
        let g = translate_1d(r, x)?;
        let samples: Vec<String> = (0..=4).map(|i| format!("{:.4}", g.eval(-r + 0.5 * i as f64))).collect();
        println!(
            "x = {x:+.2}: norm {:.6}, samples [{}], reproduction residual {:.1e}",
            g.norm,
            samples.join(", "),
            representer_check_1d(&v, r, x)?
        );
    }
    Ok(())
}
