use proptest::prelude::*;

use pdm_channel::classical::{jacobi_residual, poisson, PhaseFunction};
use pdm_channel::coeffring::{normalize, qk, rat, CoeffPoly, RawMonomial, ScalarPoly};
use pdm_channel::diffalg::{commutator, DiffOp};

fn scalar() -> impl Strategy<Value = ScalarPoly> {
    (-4i64..=4, 1i64..=3, 0u32..=2, 0u32..=2).prop_map(|(n, d, i, j)| qk(rat(n, d), i, j))
}

fn raw_monomial() -> impl Strategy<Value = RawMonomial> {
    (-2i32..=3, 0u32..=3, 0u32..=3, 0u32..=3, scalar()).prop_map(|(a, b, c, d, s)| RawMonomial::new(a, b, c, d, s))
}

fn coeff() -> impl Strategy<Value = CoeffPoly> {
    prop::collection::vec(raw_monomial(), 0..4).prop_map(normalize)
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((0u32..=2, 0u32..=1, coeff()), 0..3).prop_map(|ts| {
        ts.into_iter()
            .fold(DiffOp::zero(), |acc, (i, j, f)| &acc + &DiffOp::term(i, j, f))
    })
}

fn phase() -> impl Strategy<Value = PhaseFunction> {
    prop::collection::vec((0u32..=2, 0u32..=2, coeff()), 0..3).prop_map(|ts| {
        ts.into_iter()
            .fold(PhaseFunction::zero(), |acc, (i, j, f)| &acc + &PhaseFunction::term(i, j, f))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in coeff(), b in coeff(), c in coeff()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CoeffPoly::zero());
        prop_assert_eq!(&a * &CoeffPoly::one(), a.clone());
    }

    #[test]
    fn partial_derivatives_commute(a in coeff()) {
        prop_assert_eq!(a.derive_x().derive_y(), a.derive_y().derive_x());
    }

    #[test]
    fn leibniz_rule(a in coeff(), b in coeff()) {
        let lhs = (&a * &b).derive_x();
        let rhs = &(&a.derive_x() * &b) + &(&a * &b.derive_x());
        prop_assert_eq!(lhs, rhs);
        let lhs = (&a * &b).derive_y();
        let rhs = &(&a.derive_y() * &b) + &(&a * &b.derive_y());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_a_fixed_point(a in coeff()) {
        let raw: Vec<RawMonomial> = a
            .monomials()
            .into_iter()
            .map(|m| RawMonomial::new(m.a, m.b as u32, m.c, m.d as u32, m.scale))
            .collect();
        prop_assert_eq!(normalize(raw), a);
    }

    #[test]
    fn normal_form_preserves_values(m in raw_monomial()) {
        let raw = RawMonomial::new(m.a, m.b, m.c, m.d, m.scale.clone());
        let (q, k, x, y) = (0.8, 1.7, 0.9, 0.3);
        let direct = m.scale.eval_f64(&[q, k])
            * (q * x).sinh().powi(m.a)
            * (q * x).cosh().powi(m.b as i32)
            * (q * y).sin().powi(m.c as i32)
            * (q * y).cos().powi(m.d as i32);
        let v = normalize(vec![raw]).eval(q, k, x, y).unwrap();
        prop_assert!((v - direct).abs() <= 1e-11 * direct.abs().max(1.0));
    }

    #[test]
    fn composition_is_associative(a in diffop(), b in diffop(), c in diffop()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn commutator_jacobi(a in diffop(), b in diffop(), c in diffop()) {
        let j = &(&commutator(&a, &commutator(&b, &c)) + &commutator(&b, &commutator(&c, &a)))
            + &commutator(&c, &commutator(&a, &b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn poisson_jacobi_and_antisymmetry(f in phase(), g in phase(), h in phase()) {
        prop_assert_eq!(poisson(&f, &g), -&poisson(&g, &f));
        prop_assert!(jacobi_residual(&f, &g, &h).is_zero());
    }

    #[test]
    fn poisson_leibniz(f in phase(), g in phase(), h in phase()) {
        let lhs = poisson(&f, &(&g * &h));
        let rhs = &(&poisson(&f, &g) * &h) + &(&g * &poisson(&f, &h));
        prop_assert_eq!(lhs, rhs);
    }
}
