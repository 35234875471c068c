use proptest::prelude::*;
use sobolev_bumps::{kernel_eval, matern_profile, matern_profile_deriv, KernelSpec};

const PAIRS: [(usize, f64); 6] = [(1, 1.0), (1, 2.0), (1, 3.0), (2, 1.5), (2, 2.5), (2, 3.5)];

fn spec_strategy() -> impl Strategy<Value = KernelSpec> {
    (0..PAIRS.len()).prop_map(|i| KernelSpec::new(PAIRS[i].0, PAIRS[i].1).unwrap())
}

fn point(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, d)
}

proptest! {
    #[test]
    fn kernel_is_symmetric(spec in spec_strategy(), x in point(2), y in point(2)) {
        let d = spec.d();
        let a = kernel_eval(&spec, &x[..d], &y[..d]).unwrap();
        let b = kernel_eval(&spec, &y[..d], &x[..d]).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert_eq!(kernel_eval(&spec, &x[..d], &x[..d]).unwrap(), 1.0);
    }

    #[test]
    fn gram_of_five_points_is_positive_definite(
        spec in spec_strategy(),
        pts in prop::collection::vec(point(2), 5),
    ) {
        let d = spec.d();
        let pts: Vec<&[f64]> = pts.iter().map(|p| &p[..d]).collect();
        let sep = (0..5)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| pts[i].iter().zip(pts[j]).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
            .fold(f64::INFINITY, f64::min);
        prop_assume!(sep > 0.1);
        let g = nalgebra::DMatrix::from_fn(5, 5, |i, j| kernel_eval(&spec, pts[i], pts[j]).unwrap());
        prop_assert!(g.cholesky().is_some());
    }

    #[test]
    fn profile_decreases(n in 0u32..4, a in 0.0..20.0f64, b in 0.0..20.0f64) {
        let nu = n as f64 + 0.5;
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(matern_profile(nu, hi).unwrap() < matern_profile(nu, lo).unwrap());
    }
}

#[test]
fn derivatives_match_finite_differences() {
    for n in 0..4 {
        let nu = n as f64 + 0.5;
        for t in [0.1, 1.0, 5.0] {
            for order in 1..=2usize.min(2 * n as usize + 1) {
                let h = 1e-4 * t;
                let f = |s: f64| matern_profile_deriv(nu, s, order - 1).unwrap();
                // fourth-order central difference
                let fd = (8.0 * (f(t + h) - f(t - h)) - (f(t + 2.0 * h) - f(t - 2.0 * h))) / (12.0 * h);
                let exact = matern_profile_deriv(nu, t, order).unwrap();
                // scaled by the lower-order value since some derivatives vanish at t = 1
                let err = (fd - exact).abs() / (exact.abs() + f(t).abs());
                assert!(err <= 1e-7, "nu={nu} t={t} order={order} err={err:e}");
            }
        }
    }
}

#[test]
fn profile_is_one_at_origin_and_smoothness_is_enforced() {
    for n in 0..5 {
        let nu = n as f64 + 0.5;
        assert_eq!(matern_profile(nu, 0.0).unwrap(), 1.0);
        assert!(matern_profile_deriv(nu, 0.0, 2 * n as usize).is_ok());
        assert!(matern_profile_deriv(nu, 0.0, 2 * n as usize + 1).is_err());
    }
    assert!(matern_profile(1.0, 1.0).is_err());
    assert!(matern_profile(0.5, -1.0).is_err());
}
