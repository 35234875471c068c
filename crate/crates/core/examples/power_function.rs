//! Power Functions against inverse bump norms.

use sobolev_bumps::analysis::{lower_bound_check, uncertainty_check, PointSet};
use sobolev_bumps::{KernelSpec, QuadratureConfig};

fn main() -> sobolev_bumps::Result<()> {
    let quad = QuadratureConfig::default();
    let line = KernelSpec::new(1, 1.0)?;
    for r in [0.01, 0.1, 1.0, 10.0] {
        let u = uncertainty_check(&line, r, &quad)?;
        println!("r = {r:5}: P_{{-r,r}}(0) = {:.12}, beta = {:.12}, product = {:.15}", u.power, u.beta, u.product);
    }

    let plane = KernelSpec::new(2, 1.5)?;
    let sites = PointSet::new(vec![vec![1.0, 0.0], vec![-0.5, 0.8], vec![-0.4, -0.9]])?;
    let x = [0.0, 0.0];
    let dist = sites.distance(&x);
    for f in [0.25, 0.5, 1.0] {
        let rep = lower_bound_check(&plane, &sites, &x, f * dist, &quad)?;
        println!("r_b = {:.3}: P_X(0) = {:.6} >= 1/beta = {:.6}: {}", f * dist, rep.power, rep.inverse_beta, rep.holds);
    }
    Ok(())
}
