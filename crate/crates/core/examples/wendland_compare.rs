//! Non-optimal bumps: a Wendland function and scaled optimal bumps.

use sobolev_bumps::analysis::{scaled_bump_compare, wendland_norm_compare};
use sobolev_bumps::{KernelSpec, QuadratureConfig};

fn main() -> sobolev_bumps::Result<()> {
    let quad = QuadratureConfig::default();
    for r in [0.1, 1.0, 10.0] {
        let c = wendland_norm_compare(r, &quad)?;
        println!("r = {r:4}: Wendland norm {:.6}, optimal {:.6}", c.wendland_norm, c.beta);
    }
    let spec = KernelSpec::new(1, 1.0)?;
    for r in [0.01, 0.1, 0.5] {
        let c = scaled_bump_compare(&spec, r, &quad)?;
        println!(
            "r = {r:4}: scaled {:.6}, optimal {:.6}, ratio {:.6}, profile gap {:.3e}",
            c.norm_scaled, c.norm_optimal, c.ratio, c.max_profile_gap
        );
    }
    Ok(())
}
