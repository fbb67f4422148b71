mod common;

use common::printed_level_four as printed;
use pdm_channel::quadalg::{sigma_nu_exact, tau_sq_nu_exact, verify_l_matrix};

#[test]
fn closed_forms_reproduce_printed_block() {
    let (sigmas, taus) = printed();
    for (nu, want) in [0u32, 2, 4].into_iter().zip(&sigmas) {
        assert_eq!(&sigma_nu_exact(4, nu).unwrap(), want, "sigma_{nu}");
    }
    for (nu, want) in [2u32, 4].into_iter().zip(&taus) {
        assert_eq!(&tau_sq_nu_exact(4, nu).unwrap(), want, "tau_{nu}^2");
    }
}

#[test]
fn quadrature_magnitudes_match_printed_block() {
    let (sigmas, taus) = printed();
    for k in [0.5, 1.0, 2.5] {
        let r = verify_l_matrix(4, k, 1.0).unwrap();
        let nus = &r.analytic.nus;
        assert_eq!(nus, &vec![0, 2, 4]);
        for i in 0..3 {
            let want = sigmas[i].eval(k).unwrap();
            assert!((r.numeric[(i, i)] - want).abs() <= 1e-8 * want, "k={k} sigma_{}", nus[i]);
        }
        for i in 0..2 {
            let want = taus[i].eval(k).unwrap().sqrt();
            let got = r.numeric[(i, i + 1)].abs();
            assert!((got - want).abs() <= 1e-8 * want, "k={k} tau_{}", nus[i + 1]);
        }
        assert!(r.numeric[(0, 2)].abs() <= 1e-10 * r.numeric.amax());
    }
}
