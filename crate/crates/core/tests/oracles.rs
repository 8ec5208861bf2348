mod common;

use bicycle_geodesics::dynamics::{apex_initial_state, integrate_endpoint, IntegrationOptions};
use bicycle_geodesics::elliptic::{
    carlson_rd, carlson_rf, carlson_rj, complete_k, jacobi_sn_cn_dn, Modulus,
};
use bicycle_geodesics::shooting::{shoot, FramePlacement, ShootingOptions};
use bicycle_geodesics::Vec3;
use common::oracle;
use proptest::prelude::*;

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn carlson_rf_matches_quadrature(x in 0.05f64..4.0, y in 0.05f64..4.0, z in 0.05f64..4.0) {
        prop_assert!(rel(carlson_rf(x, y, z).unwrap(), oracle::rf(x, y, z)) < 1e-10);
    }

    #[test]
    fn carlson_rj_matches_quadrature(
        x in 0.05f64..4.0, y in 0.05f64..4.0, z in 0.05f64..4.0, p in 0.05f64..4.0,
    ) {
        prop_assert!(rel(carlson_rj(x, y, z, p).unwrap(), oracle::rj(x, y, z, p)) < 1e-10);
        prop_assert!(rel(carlson_rd(x, y, z).unwrap(), oracle::rd(x, y, z)) < 1e-10);
    }

    #[test]
    fn sn_matches_inverted_quadrature(u in -12.0f64..12.0, m in 0.0f64..0.98) {
        let t = jacobi_sn_cn_dn(u, Modulus::from_parameter(m).unwrap());
        let (sn, cn, dn) = oracle::sn_cn_dn(u, m);
        prop_assert!((t.sn - sn).abs() < 1e-10);
        prop_assert!((t.cn - cn).abs() < 1e-10);
        prop_assert!((t.dn - dn).abs() < 1e-10);
    }

    #[test]
    fn sn_quasi_periodicity(u in -6.0f64..6.0, m in 0.0f64..0.99) {
        let md = Modulus::from_parameter(m).unwrap();
        let k = complete_k(md).unwrap();
        let here = jacobi_sn_cn_dn(u, md);
        let half = jacobi_sn_cn_dn(u + 2.0 * k, md);
        let full = jacobi_sn_cn_dn(u + 4.0 * k, md);
        prop_assert!((half.sn + here.sn).abs() < 1e-10);
        prop_assert!((half.cn + here.cn).abs() < 1e-10);
        prop_assert!((half.dn - here.dn).abs() < 1e-10);
        prop_assert!((full.sn - here.sn).abs() < 1e-10);
    }
}

#[test]
fn complete_k_agrees_with_agm() {
    for i in 0..40 {
        let m = i as f64 / 40.0;
        let k = complete_k(Modulus::from_parameter(m).unwrap()).unwrap();
        assert!(rel(k, oracle::k_agm(m)) < 1e-14, "m = {m}");
    }
}

#[test]
fn integrator_agrees_with_fixed_step_rk4() {
    for (a, b) in [(0.5, 1.0), (1.5, 0.5), (0.3, 0.0), (2.0, 2.0)] {
        let s0 = apex_initial_state(a, b).unwrap();
        let end = integrate_endpoint(&s0, 6.0, &IntegrationOptions::tight()).unwrap();
        let arr = |v: Vec3| [v.x, v.y, v.z];
        let [x, v, r] = oracle::rk4(arr(s0.x), arr(s0.v), arr(s0.p), arr(s0.r), 6.0, 12_000);
        let gap = [(end.x, x), (end.v, v), (end.r, r)]
            .iter()
            .map(|(lib, o)| (lib - Vec3::from(*o)).norm())
            .fold(0.0, f64::max);
        assert!(gap < 1e-9, "({a}, {b}): {gap:e}");
    }
}

#[test]
fn shooting_solutions_satisfy_the_constraints() {
    let s0 = apex_initial_state(1.5, 0.5).unwrap();
    let target = integrate_endpoint(&s0, 1.0, &IntegrationOptions::tight()).unwrap();
    let from = FramePlacement::of_state(&s0);
    let sols = shoot(
        &from,
        &FramePlacement::of_state(&target),
        &ShootingOptions::default(),
    )
    .unwrap();
    assert!(sols.iter().any(|s| (s.duration - 1.0).abs() < 1e-6));
    for sol in &sols {
        let start = sol.initial_state(&from);
        let (unit_v, ortho, unit_speed) = start.constraint_residuals();
        assert!(unit_v.abs() < 1e-12 && unit_speed.abs() < 1e-12 && ortho.abs() < 1e-12);
        let end = integrate_endpoint(&start, sol.duration, &IntegrationOptions::tight()).unwrap();
        assert!((end.x - target.x).norm() < 1e-7);
        assert!((end.v - target.v).norm() < 1e-7);
        assert!((end.p - sol.p).norm() == 0.0);
        assert!((end.hamiltonian() - start.hamiltonian()).abs() < 1e-9);
    }
}
