//! The cubic Casimir of the quadratic algebra.

use crate::coeffring::{rat, qk, ScalarPoly};
use crate::diffalg::{triple_sym, DiffOp};
use crate::error::Result;

use super::constants::{match_combination, AlgebraOps, HPoly, StructureConstants};

#[derive(Clone, Debug)]
pub struct Casimir {
    pub operator: DiffOp,
    /// `K = k0 + k1 H + k2 H² + k3 H³`
    pub in_h: HPoly,
}

fn frac(n: i64, d: i64) -> HPoly {
    HPoly::constant(qk(rat(n, d), 0, 0))
}

/// `c(H) ∘ op`, building only the `H` powers actually needed.
fn h_times(c: &HPoly, op: &DiffOp, h: &DiffOp) -> DiffOp {
    let mut powers = vec![op.clone()];
    for _ in 1..c.0.len() {
        let next = h.compose(powers.last().expect("nonempty"));
        powers.push(next);
    }
    c.times(&powers)
}

/// Coefficients of `K` in front of `[A³, {A,A,B}, {A,B,B}, A², {A,B}, B², A, B, 1]`.
pub fn casimir_coefficients(c: &StructureConstants) -> [HPoly; 9] {
    let (al, ga, a) = (c.alpha_h(), c.gamma_h(), c.a_h());
    let (de, ep, ze, d, z) = (c.delta(), c.epsilon(), c.zeta(), c.d(), c.z());
    let third = frac(1, 3);
    let two_thirds = frac(2, 3);
    let two = frac(2, 1);
    [
        &two_thirds * &a,
        -&(&third * &al),
        -&(&third * &ga),
        &(&(&two_thirds * &(&al * &al)) + &d) + &(&two_thirds * &(&a * &ga)),
        &(&third * &(&al * &ga)) - &de,
        &(&two_thirds * &(&ga * &ga)) - &ep,
        &(&(&(&two_thirds * &(&al * &de)) + &(&third * &(&a * &ep))) + &(&third * &(&d * &ga))) + &(&two * &z),
        &(&(&two_thirds * &(&ga * &de)) - &(&third * &(&al * &ep))) - &(&two * &ze),
        &(&third * &(&ga * &z)) - &(&third * &(&al * &ze)),
    ]
}

/// Assemble `K` as an operator and express it through powers of `H`.
pub fn casimir(ops: &AlgebraOps, c: &StructureConstants) -> Result<Casimir> {
    let coeffs = casimir_coefficients(c);
    let (a, b, h) = (&ops.a, &ops.b, &ops.h);
    let mut k_op = ops.c.compose(&ops.c);
    let pieces: [Box<dyn Fn() -> DiffOp>; 9] = [
        Box::new(|| ops.a2.compose(a)),
        Box::new(|| triple_sym(a, a, b)),
        Box::new(|| triple_sym(a, b, b)),
        Box::new(|| ops.a2.clone()),
        Box::new(|| ops.ab.clone()),
        Box::new(|| ops.b2.clone()),
        Box::new(|| a.clone()),
        Box::new(|| b.clone()),
        Box::new(DiffOp::identity),
    ];
    for (coef, piece) in coeffs.iter().zip(pieces.iter()) {
        if coef.is_zero() {
            continue;
        }
        k_op.add_assign_ref(&h_times(coef, &piece(), h));
    }
    let h3 = ops.h2.compose(h);
    let basis = [DiffOp::identity(), h.clone(), ops.h2.clone(), h3];
    let in_h = HPoly::from_coeffs(match_combination(&k_op, &basis)?);
    Ok(Casimir {
        operator: k_op,
        in_h,
    })
}

/// `−4q⁴ [2q²(7k−6) − 3H] (2q²k − H)`
pub fn casimir_printed() -> HPoly {
    let c = |n: i64, i: u32, j: u32| qk(rat(n, 1), i, j);
    let first = HPoly::from_coeffs(vec![&c(14, 2, 1) - &c(12, 2, 0), c(-3, 0, 0)]);
    let second = HPoly::from_coeffs(vec![c(2, 2, 1), c(-1, 0, 0)]);
    (&first * &second).scale(&c(-4, 4, 0))
}

impl Casimir {
    /// Value of `K` on the eigenspace `H = E`.
    pub fn value(&self, e: &ScalarPoly) -> ScalarPoly {
        self.in_h.at(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffalg::commutator;
    use crate::model2d::catalog;
    use crate::quadalg::extract_structure_constants;
    use crate::wavefn::psi_nl;

    fn build() -> (AlgebraOps, Casimir) {
        let cat = catalog();
        let ops = AlgebraOps::new(cat);
        let c = extract_structure_constants(cat).unwrap();
        let k = casimir(&ops, &c).unwrap();
        (ops, k)
    }

    #[test]
    fn casimir_matches_printed_value() {
        let (_, k) = build();
        assert_eq!(k.in_h, casimir_printed());
        assert!(k.in_h.coeff(3).is_zero());
        assert_eq!(k.in_h.eval(1.0, 1.0, 6.0), -256.0);
    }

    #[test]
    fn casimir_commutes_with_generators() {
        let (ops, k) = build();
        assert!(commutator(&k.operator, &ops.a).is_zero());
        assert!(commutator(&k.operator, &ops.b).is_zero());
    }

    #[test]
    fn casimir_acts_as_a_number_on_the_ground_state() {
        let (_, k) = build();
        let psi = psi_nl(0, 0, 1.0, 1.0).unwrap();
        let num = k.operator.numeric(1.0, 1.0);
        for (x, y) in [(0.7, 0.2), (1.3, -0.4)] {
            let kv = num.apply(&psi, x, y).unwrap();
            let v = psi.value(x, y);
            assert!((kv - (-256.0) * v).abs() < 1e-8 * 256.0, "{kv} vs {}", -256.0 * v);
        }
    }
}
