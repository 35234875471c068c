//! Optimal bump for the exponential kernel on the line, next to the
//! closed form `sinh(r - t) / sinh(r)`.

use sobolev_bumps::{solve_bump, BumpProblem, KernelSpec, QuadratureConfig};

fn main() -> sobolev_bumps::Result<()> {
    let spec = KernelSpec::new(1, 1.0)?;
    for r in [0.5, 1.0, 2.0, 5.0] {
        let bump = solve_bump(&BumpProblem::new(spec, r, QuadratureConfig::default())?)?;
        let err = (0..=100)
            .map(|i| r * i as f64 / 100.0)
            .map(|t| Ok((bump.eval(t)? - (r - t).sinh() / r.sinh()).abs()))
            .collect::<sobolev_bumps::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "r = {r:4}  beta^2 = {:.15}  coth r = {:.15}  max profile error = {err:.1e}",
            bump.beta().powi(2),
            1.0 / r.tanh()
        );
    }
    Ok(())
}
