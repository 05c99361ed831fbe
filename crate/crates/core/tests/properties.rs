//! Property tests for the invariants that hold across whole parameter
//! ranges rather than at hand-picked points.

use coxlevy::dist::{gg_cdf, GgParams, StableParams};
use coxlevy::special::{integrate, normal_cdf, QuadratureSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_cdf_symmetry_and_range(x in -30.0_f64..30.0) {
        let p = normal_cdf(x);
        // Strict interior holds until erfc saturates near |x| ≈ 8.3.
        if x.abs() <= 8.0 {
            prop_assert!(p > 0.0 && p < 1.0);
        } else {
            prop_assert!((0.0..=1.0).contains(&p));
        }
        prop_assert!((p + normal_cdf(-x) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn stable_cf_is_unit_bounded(
        alpha in 0.05_f64..=2.0,
        theta_frac in -1.0_f64..=1.0,
        s in -50.0_f64..50.0,
    ) {
        let theta = theta_frac * StableParams::theta_max(alpha);
        let p = StableParams::new(alpha, theta).unwrap();
        let v = p.cf_value(s);
        prop_assert!(v.norm() <= 1.0 + 1e-12);
        prop_assert!((p.cf_value(0.0).re - 1.0).abs() < 1e-15);
        // Hermitian symmetry of any CF: conj(g(s)) = g(-s).
        let w = p.cf_value(-s);
        prop_assert!((v.conj() - w).norm() < 1e-12);
    }

    #[test]
    fn stable_theta_outside_envelope_is_rejected(
        alpha in 0.05_f64..=2.0,
        excess in 1.01_f64..4.0,
    ) {
        let theta = excess * StableParams::theta_max(alpha);
        prop_assert!(StableParams::new(alpha, theta).is_err());
    }

    #[test]
    fn gg_cdf_is_monotone_in_unit_range(
        nu in prop_oneof![0.2_f64..3.0, -3.0_f64..-0.2],
        kappa in 0.3_f64..5.0,
        delta in 0.2_f64..4.0,
        x0 in 0.01_f64..20.0,
        dx in 0.01_f64..5.0,
    ) {
        let p = GgParams::new(nu, kappa, delta).unwrap();
        let f0 = gg_cdf(&p, x0).unwrap();
        let f1 = gg_cdf(&p, x0 + dx).unwrap();
        prop_assert!((0.0..=1.0).contains(&f0));
        prop_assert!(f1 + 1e-12 >= f0);
    }
}

#[test]
fn quadrature_handles_scaled_translated_gaussians() {
    // One deterministic sweep: ∫ φ((x-m)/s)/s dx = 1 for assorted (m, s).
    let spec = QuadratureSpec::default();
    for &(m, s) in &[(0.0, 1.0), (3.0, 0.2), (-7.0, 4.0)] {
        let v = integrate(
            |x: f64| coxlevy::special::normal_density((x - m) / s) / s,
            f64::NEG_INFINITY,
            f64::INFINITY,
            &spec,
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-9, "(m={m}, s={s}): {v}");
    }
}
