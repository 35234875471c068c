//! Random admissible perturbations never beat the optimal bump.

use sobolev_bumps::analysis::{perturbation_optimality, DEFAULT_SEED};
use sobolev_bumps::QuadratureConfig;

fn main() -> sobolev_bumps::Result<()> {
    let rep = perturbation_optimality(1.0, 100, DEFAULT_SEED, &QuadratureConfig::default())?;
    println!("beta(1) = {:.15}", rep.beta);
    println!("min norm excess over {} trials: {:.3e}", rep.trials.len(), rep.min_excess);
    println!("max value excess: {:.3e}", rep.max_value_excess);
    for t in rep.trials.iter().take(5) {
        println!("  center {:+.3} support {:.3} eps {:+.3} -> excess {:.3e}", t.center, t.support, t.epsilon, t.excess);
    }
    Ok(())
}
