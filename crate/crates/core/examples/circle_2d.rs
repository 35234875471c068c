//! Radial bumps in the plane: trace system, norm and a coarse profile.

use sobolev_bumps::{solve_bump, BumpProblem, KernelSpec, QuadratureConfig};

fn main() -> sobolev_bumps::Result<()> {
    let r = 1.0;
    for m in [1.5, 2.5, 3.5] {
        let spec = KernelSpec::new(2, m)?;
        let bump = solve_bump(&BumpProblem::new(spec, r, QuadratureConfig::default())?)?;
        let sys = bump.system();
        println!("m = {m}: {} trace conditions, beta = {:.12}", sys.rhs.len(), bump.beta());
        println!("  gram eigenvalues {:?}", sys.eigenvalues());
        println!("  boundary functionals {:?}", bump.boundary_functionals()?);
        let profile = bump.sample(6)?;
        for (t, v) in profile.ts.iter().zip(&profile.values) {
            println!("  b({t:.1}) = {v:+.10}");
        }
    }
    Ok(())
}
