mod common;

use nalgebra::DMatrix;

use pdm_channel::coeffring::{qk, rat};
use pdm_channel::diffalg::{DiffOp, NumericOp};
use pdm_channel::model2d::catalog;
use pdm_channel::wavefn::{
    boundary_check, chibar_l, energy_2d, omega_zero_mode, operator_matrix, psi_bar_nl, psi_nl, r_eigenvalue,
    second_basis, SmoothField, StripQuadrature, ZeroModeKind, DEFAULT_STRIP_NODES,
};

const RESIDUAL_TOL: f64 = 1e-9;

/// Largest `|(op − λ) f| / Σ|terms|` over the random points.
fn worst_residual(op: &NumericOp, f: &SmoothField, lambda: f64, seed: u64, q: f64) -> f64 {
    common::strip_points(seed, 20, q)
        .into_iter()
        .map(|(x, y)| {
            let (v, scale) = op.apply_with_scale(f, x, y).unwrap();
            let u = f.value(x, y);
            (v - lambda * u).abs() / scale.max((lambda * u).abs()).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

#[test]
fn first_basis_is_orthonormal() {
    let (k, q) = (1.0, 1.0);
    let fields: Vec<SmoothField> = (0..=5)
        .flat_map(|n| (0..=5).map(move |l| psi_nl(n, l, k, q).unwrap()))
        .collect();
    let quad = StripQuadrature::new(q, DEFAULT_STRIP_NODES).unwrap();
    let gram = operator_matrix(&fields, None, &quad).unwrap();
    let dev = (gram - DMatrix::<f64>::identity(fields.len(), fields.len())).amax();
    assert!(dev <= 1e-10, "Gram deviation {dev}");
}

#[test]
fn first_basis_eigen_residuals() {
    let cat = catalog();
    for (k, q) in [(1.0, 1.0), (2.5, 0.7), (0.5, 1.3)] {
        let h = cat.h.numeric(q, k);
        let l = cat.l.numeric(q, k);
        for n in 0..=3 {
            for ll in 0..=3 {
                let f = psi_nl(n, ll, k, q).unwrap();
                let e = energy_2d(2 * n + ll, k, q);
                assert!(worst_residual(&h, &f, e, 1, q) <= RESIDUAL_TOL, "H on psi {n},{ll} k={k}");
                let lv = ((ll + 1) as f64 * q).powi(2);
                assert!(worst_residual(&l, &f, lv, 2, q) <= RESIDUAL_TOL, "L on psi {n},{ll}");
                let fb = psi_bar_nl(n, ll, k, q).unwrap();
                assert!(worst_residual(&h, &fb, e, 3, q) <= RESIDUAL_TOL, "H on psibar {n},{ll}");
            }
        }
    }
}

#[test]
fn second_basis_eigen_residuals() {
    let cat = catalog();
    for (k, q) in [(1.0, 1.0), (2.5, 1.0)] {
        let h = cat.h.numeric(q, k);
        let r = cat.r.numeric(q, k);
        for n_total in 0..=5 {
            let sb = second_basis(n_total, k, q).unwrap();
            for s in &sb.states {
                let e = energy_2d(n_total, k, q);
                assert!(worst_residual(&h, &s.field, e, 4, q) <= RESIDUAL_TOL);
                let rv = r_eigenvalue(s.nu, k, q);
                let res = worst_residual(&r, &s.field, rv, 5, q);
                assert!(res <= RESIDUAL_TOL, "R on Psi N={n_total} nu={} k={k}: {res}", s.nu);
            }
        }
    }
}

#[test]
fn zero_modes_are_annihilated() {
    let cat = catalog();
    for (k, q) in [(1.0, 1.0), (1.5, 0.8)] {
        let eta = cat.eta.numeric(q, k);
        let etabar = cat.etabar.numeric(q, k);
        for s in [0.0, 1.0, 2.0, 3.0] {
            let w = omega_zero_mode(ZeroModeKind::Eta, s, k, q).unwrap();
            assert!(worst_residual(&eta, &w, 0.0, 6, q) <= 1e-12, "eta omega_{s}");
            let wb = omega_zero_mode(ZeroModeKind::Etabar, s, k, q).unwrap();
            assert!(worst_residual(&etabar, &wb, 0.0, 7, q) <= 1e-12, "etabar omegabar_{s}");
        }
        let w = omega_zero_mode(ZeroModeKind::Eta, 1.5, k, q).unwrap();
        assert!(worst_residual(&eta, &w, 0.0, 8, q) <= 1e-12);
    }
}

#[test]
fn eta_maps_levels_to_the_shifted_hamiltonian() {
    let cat = catalog();
    let two_q2k = qk(rat(2, 1), 2, 1);
    let (k, q) = (1.5, 0.9);
    for n in 0..=2 {
        for l in 0..=2 {
            let f = psi_nl(n, l, k, q).unwrap();
            let e = energy_2d(2 * n + l, k, q);
            // (H^{(k+1)} + 2q²k) η ψ = E η ψ
            let shifted = &cat.h.shift_k_op(1) + &DiffOp::scalar(two_q2k.clone());
            let num = shifted.compose(&cat.eta).numeric(q, k);
            let eta = cat.eta.numeric(q, k);
            for (x, y) in common::strip_points(9, 20, q) {
                let (lhs, scale) = num.apply_with_scale(&f, x, y).unwrap();
                let eta_psi = eta.apply(&f, x, y).unwrap();
                let res = (lhs - e * eta_psi).abs() / scale.max((e * eta_psi).abs());
                assert!(res <= RESIDUAL_TOL, "n={n} l={l}: {res}");
            }
        }
    }
}

#[test]
fn boundary_suite() {
    for (k, q) in [(1.0, 1.0), (2.5, 0.6)] {
        for n in 0..=3 {
            for l in 0..=3 {
                let f = psi_nl(n, l, k, q).unwrap();
                assert!(boundary_check(&f, q).consistent_with(true), "psi {n},{l}");
            }
        }
        let w = omega_zero_mode(ZeroModeKind::Eta, 2.0, k, q).unwrap();
        assert!(boundary_check(&w, q).consistent_with(true));
    }
}

#[test]
fn discarded_solutions_fail_the_boundary() {
    let q = 1.0;
    for l in -1..=3 {
        let r = boundary_check(&chibar_l(l, q), q);
        assert!(r.fails, "chibar_{l} should violate the edge condition");
    }
    for s in [0.0, 1.0, 2.0] {
        let w = omega_zero_mode(ZeroModeKind::Etabar, s, 1.0, q).unwrap();
        assert!(boundary_check(&w, q).fails, "omegabar_{s}");
    }
    for s in [1.0, 2.0] {
        let w = omega_zero_mode(ZeroModeKind::Eta, s, 1.0, q).unwrap();
        assert!(boundary_check(&w, q).vanishes, "omega_{s}");
    }
}
