//! Floating-point checks that tie exact critical products to analytic
//! L-values and to Cohen's kernel.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use cuspkernel::numerics::{
    cohen_series_numeric, lstar_real, petersson_norm_numeric, zeta_z, zeta_z_direct, zeta_z_lipschitz,
};
use cuspkernel::periods::{critical_products, PeriodContext};

fn delta(n: usize) -> Vec<f64> {
    cuspkernel::modforms::delta_qexp(n).unwrap().coeffs().iter().map(|c| c.to_f64().unwrap()).collect()
}

#[test]
fn critical_ratio_matches_exact() {
    let a = delta(80);
    let l = |s: f64| lstar_real(&a, 12, s).unwrap().value.re;
    let numeric = l(2.0) * l(3.0) / (l(4.0) * l(3.0));
    let c23 = critical_products(12, 2, 3).unwrap()[0].as_rational().unwrap();
    let c43 = critical_products(12, 4, 3).unwrap()[0].as_rational().unwrap();
    let exact = (c23 / c43).to_f64().unwrap();
    assert!(((numeric - exact) / exact).abs() < 1e-8, "{numeric} vs {exact}");
}

#[test]
fn petersson_norms_are_consistent() {
    for k in [12, 16] {
        let ctx = PeriodContext::new(k, 60).unwrap();
        let p = petersson_norm_numeric(&ctx, 0, 0, 60).unwrap();
        assert!(p.value > 0.0);
        assert!(p.spread < 1e-9, "k={k} spread {}", p.spread);
    }
}

#[test]
fn zeta_at_two_against_plain_sum() {
    let z = Complex64::new(0.0, 1.0);
    let s = Complex64::from(2.0);
    let m = 200_000i64;
    let plain: Complex64 = (-m..=m).map(|n| (z + n as f64).powc(-s)).sum();
    // Tail beyond |n| = M is about 2/M.
    let v = zeta_z(z, s).unwrap();
    assert!((v.value - plain).norm() < 3.0 / m as f64);
    // Both accelerated routes agree far more tightly.
    let lip = zeta_z_lipschitz(z, s, 30).unwrap();
    let dir = zeta_z_direct(z, s, 24).unwrap();
    assert!((lip.value - dir.value).norm() < 1e-12);
    // At s = 2 the sum is pi^2 / sin^2(pi z).
    let closed = Complex64::from(PI * PI) / (z * PI).sin().powi(2);
    assert!((lip.value - closed).norm() < 1e-12 * closed.norm());
}

#[test]
fn cohen_truncation_error_shrinks() {
    let s = Complex64::from(6.0);
    let z = Complex64::new(0.0, 2.0);
    let diffs: Vec<f64> = [50, 100, 200].iter().map(|&c| cohen_series_numeric(12, s, z, c).unwrap().doubling_difference()).collect();
    assert!(diffs[1] < diffs[0] && diffs[2] < diffs[1], "{diffs:?}");

    let s = Complex64::new(2.0, 0.5);
    let a = cohen_series_numeric(12, s, z, 40).unwrap();
    let b = cohen_series_numeric(12, s, z, 80).unwrap();
    assert!(b.value.value.norm().is_finite());
    assert!(b.doubling_difference() < a.doubling_difference());
}

#[test]
fn cohen_kernel_is_modular() {
    let s = Complex64::new(5.0, 0.3);
    let z = Complex64::new(0.2, 1.1);
    let base = cohen_series_numeric(12, s, z, 120).unwrap();
    let tol = 50.0 * base.doubling_difference() + 1e-12 * base.value.value.norm();
    let shifted = cohen_series_numeric(12, s, z + 1.0, 120).unwrap();
    assert!((shifted.value.value - base.value.value).norm() < tol);
    let inv = cohen_series_numeric(12, s, -1.0 / z, 120).unwrap();
    let transformed = inv.value.value * z.powi(-12);
    assert!((transformed - base.value.value).norm() < tol, "{transformed} vs {}", base.value.value);
}

mod properties {
    use super::*;
    use cuspkernel::numerics::{functional_equation_residual, lstar_split};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn functional_equation_holds_in_the_strip(re in 1.2f64..10.8, im in -3.0f64..3.0) {
            let a = delta(60);
            let r = functional_equation_residual(&a, 12, Complex64::new(re, im)).unwrap();
            prop_assert!(r < 1e-10, "residual {r}");
        }

        #[test]
        fn split_point_is_immaterial(re in 1.0f64..11.0, t in 0.8f64..1.3) {
            let a = delta(70);
            let s = Complex64::new(re, 0.5);
            let x = lstar_split(&a, 12, s, 70, 1.0).unwrap();
            let y = lstar_split(&a, 12, s, 70, t).unwrap();
            prop_assert!((x.value - y.value).norm() <= 1e-11 * x.value.norm());
        }

        #[test]
        fn zeta_is_periodic(x in -2.0f64..2.0, y in 0.01f64..2.0, re in 1.5f64..9.0) {
            let s = Complex64::new(re, 0.25);
            let z = Complex64::new(x, y);
            let a = zeta_z(z, s).unwrap();
            let b = zeta_z(z + 1.0, s).unwrap();
            prop_assert!((a.value - b.value).norm() <= 1e-9 * a.value.norm().max(1e-300) + a.error + b.error);
        }
    }
}
