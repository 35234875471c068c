use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sobolev_bumps::analysis::{
    beta_curve, interpolation_error_bound, lower_bound_check, perturbation_optimality, uncertainty_check, PointSet,
    DEFAULT_SEED,
};
use sobolev_bumps::{KernelSpec, QuadratureConfig};

fn quad() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn beta_curves_are_monotone_and_bounded_below() {
    let grid: Vec<f64> = (0..9).map(|i| 10f64.powf(-2.0 + 0.375 * i as f64)).collect();
    for (d, m) in [(1, 1.0), (1, 2.0), (1, 3.0), (2, 1.5), (2, 2.5), (2, 3.5)] {
        let spec = KernelSpec::new(d, m).unwrap();
        let curve = beta_curve(&spec, &grid, &quad()).unwrap();
        assert!(curve.failures.is_empty(), "d={d} m={m} {:?}", curve.failures);
        assert!(curve.lower_bound_violations().is_empty(), "d={d} m={m}");
        assert!(curve.monotone_violations().is_empty(), "d={d} m={m}");
    }
}

#[test]
fn optimal_bump_maximizes_value_at_origin() {
    let rep = perturbation_optimality(1.0, 30, DEFAULT_SEED, &quad()).unwrap();
    assert!(rep.min_excess >= -1e-12);
    assert!(rep.max_value_excess <= 1e-12, "{:e}", rep.max_value_excess);
}

#[test]
fn uncertainty_identity_on_the_line() {
    let spec = KernelSpec::new(1, 1.0).unwrap();
    for r in [0.01, 0.1, 1.0, 10.0] {
        let u = uncertainty_check(&spec, r, &quad()).unwrap();
        assert!((u.product - 1.0).abs() <= 1e-9, "r={r} {u:?}");
        assert!((u.power.powi(2) - r.tanh()).abs() <= 1e-12);
    }
}

#[test]
fn power_function_bounds_interpolation_error() {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for (d, m) in [(1, 1.0), (1, 2.0), (2, 1.5)] {
        let spec = KernelSpec::new(d, m).unwrap();
        for _ in 0..10 {
            let pt = |rng: &mut ChaCha8Rng| (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<f64>>();
            let centers = PointSet::new((0..4).map(|_| pt(&mut rng)).collect()).unwrap();
            let sites = PointSet::new((0..6).map(|_| pt(&mut rng)).collect()).unwrap();
            let coeffs: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let x = pt(&mut rng);
            let (err, bound) = interpolation_error_bound(&spec, &centers, &coeffs, &sites, &x).unwrap();
            assert!(err <= bound * (1.0 + 1e-8) + 1e-12, "d={d} m={m} err={err:e} bound={bound:e}");
        }
    }
}

#[test]
fn power_function_dominates_inverse_bump_norm() {
    for (d, m) in [(1, 1.0), (1, 2.0), (2, 1.5), (2, 2.5)] {
        let spec = KernelSpec::new(d, m).unwrap();
        let pts: Vec<Vec<f64>> = if d == 1 {
            vec![vec![-0.7], vec![0.5], vec![1.4]]
        } else {
            vec![vec![0.6, 0.0], vec![-0.3, 0.5], vec![-0.2, -0.8]]
        };
        let set = PointSet::new(pts).unwrap();
        let x = vec![0.0; d];
        let dist = set.distance(&x);
        for f in [0.25, 0.5, 1.0] {
            let rep = lower_bound_check(&spec, &set, &x, f * dist, &quad()).unwrap();
            assert!(rep.holds, "d={d} m={m} {rep:?}");
        }
        assert!(lower_bound_check(&spec, &set, &x, 1.01 * dist, &quad()).is_err());
    }
}
