//! Structure function of the deformed-oscillator realization.

use crate::coeffring::{rat, Poly, Rat, ScalarPoly};

use super::constants::{HPoly, StructureConstants};

/// Polynomials in `(x, u, k, q, E)`.
pub type MPoly = Poly<5>;

pub const VX: usize = 0;
pub const VU: usize = 1;
pub const VK: usize = 2;
pub const VQ: usize = 3;
pub const VE: usize = 4;

pub fn mvar(i: usize) -> MPoly {
    MPoly::var(i)
}

pub fn mconst(n: i64, d: i64) -> MPoly {
    MPoly::constant(rat(n, d))
}

pub fn lift_scalar(p: &ScalarPoly) -> MPoly {
    MPoly::from_terms(p.terms().map(|(e, c)| {
        let mut m = [0; 5];
        m[VQ] = e[0];
        m[VK] = e[1];
        (m, c.clone())
    }))
}

/// `H → E`
pub fn lift_h(p: &HPoly) -> MPoly {
    let e = mvar(VE);
    let mut acc = MPoly::zero();
    for c in p.0.iter().rev() {
        acc = &(&acc * &e) + &lift_scalar(c);
    }
    acc
}

/// Back to `Q[q, k]`; `None` if `x`, `u` or `E` survive.
pub fn lower_scalar(p: &MPoly) -> Option<ScalarPoly> {
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        if e[VX] != 0 || e[VU] != 0 || e[VE] != 0 {
            return None;
        }
        terms.push(([e[VQ], e[VK]], c.clone()));
    }
    Some(ScalarPoly::from_terms(terms))
}

/// `s = x + u`
fn shifted() -> MPoly {
    &mvar(VX) + &mvar(VU)
}

/// `2s + c`
fn two_s(c: Rat) -> MPoly {
    &shifted().scale(&rat(2, 1)) + &MPoly::constant(c)
}

/// The general eight-term structure function for constants `c`, with the
/// Casimir value `k_value` given as a polynomial in `H`.
pub fn phi_general(c: &StructureConstants, k_value: &HPoly) -> MPoly {
    let al = lift_scalar(&c.alpha);
    let ga = lift_scalar(&c.gamma);
    let a = lift_scalar(&c.a);
    let de = lift_h(&c.delta());
    let ep = lift_h(&c.epsilon());
    let ze = lift_h(&c.zeta());
    let d = lift_h(&c.d());
    let z = lift_h(&c.z());
    let kk = lift_h(k_value);
    let n = |v: i64| mconst(v, 1);

    let tm3 = two_s(rat(-3, 1));
    let tm1 = two_s(rat(-1, 1));
    let tp1 = two_s(rat(1, 1));
    let tm1_2 = tm1.pow(2);
    let tm1_4 = tm1.pow(4);
    let s = shifted();

    let g2 = ga.pow(2);
    let g3 = ga.pow(3);
    let g4 = ga.pow(4);
    let g5 = ga.pow(5);
    let g6 = ga.pow(6);
    let g8 = ga.pow(8);
    let al2 = al.pow(2);

    let term1 = &(&(&n(-3072) * &g6) * &kk) * &tm1_2;

    let c2 = &(&(&(&al2 * &ep) - &(&(&al * &ga) * &de)) + &(&(&a * &ga) * &ep)) - &(&d * &g2);
    let term2 = &(&(&(&(&n(-48) * &g6) * &c2) * &tm3) * &tm1_4) * &tp1;

    let c3 = &(&n(3) * &al2) + &(&(&n(4) * &a) * &ga);
    let term3 = &(&(&(&g8 * &c3) * &tm3.pow(2)) * &tm1_4) * &tp1.pow(2);

    let inner = &(&(&al * &ep.pow(2)) - &(&(&(&n(2) * &ga) * &de) * &ep)) + &(&(&n(4) * &g2) * &ze);
    let term4 = &n(768) * &inner.pow(2);

    let c5 = [
        &(&n(3) * &al2) * &ep.pow(2),
        &(&(&(&n(-6) * &al) * &ga) * &de) * &ep,
        &(&(&n(2) * &a) * &ga) * &ep.pow(2),
        &(&n(2) * &g2) * &de.pow(2),
        &(&(&n(-4) * &d) * &g2) * &ep,
        &(&n(8) * &g3) * &z,
        &(&(&n(4) * &al) * &g2) * &ze,
    ]
    .iter()
    .fold(MPoly::zero(), |acc, t| &acc + t);
    let quad = &(&(&n(12) * &s.pow(2)) - &(&n(12) * &s)) - &n(1);
    let term5 = &(&(&(&n(32) * &g4) * &c5) * &tm1_2) * &quad;

    let c6 = [
        &(&n(3) * &al2) * &ep.pow(3),
        &(&(&(&n(-9) * &al) * &ga) * &de) * &ep.pow(2),
        &(&a * &ga) * &ep.pow(3),
        &(&(&n(6) * &g2) * &de.pow(2)) * &ep,
        &(&(&n(-3) * &d) * &g2) * &ep.pow(2),
        &(&n(2) * &g4) * &de.pow(2),
        &(&(&n(2) * &d) * &g4) * &ep,
        &(&(&n(12) * &g3) * &ep) * &z,
        &(&n(-4) * &g5) * &z,
        &(&(&(&n(12) * &al) * &g2) * &ep) * &ze,
        &(&(&n(-12) * &g3) * &de) * &ze,
        &(&(&n(4) * &al) * &g4) * &ze,
    ]
    .iter()
    .fold(MPoly::zero(), |acc, t| &acc + t);
    let term6 = &(&(&n(-256) * &g2) * &c6) * &tm1_2;

    [term1, term2, term3, term4, term5, term6]
        .iter()
        .fold(MPoly::zero(), |acc, t| &acc + t)
}

/// `3·2³⁰ q¹⁶ (2s+k−1)(2s+k−2)(2s−k)(2s−k−1)
///  × (q²[(2s−½)² − (k−½)²] − E)(q²[(2s−3/2)² − (k−½)²] − E)`, `s = x + u`.
///
/// The two `Δ` pairs are multiplied out so that the square root never
/// appears.
pub fn phi_factorized() -> MPoly {
    let k = mvar(VK);
    let q2 = mvar(VQ).pow(2);
    let e = mvar(VE);
    let two_s = shifted().scale(&rat(2, 1));
    let lin = |ck: i64, c: Rat| &(&two_s + &k.scale(&rat(ck, 1))) + &MPoly::constant(c);
    let kh2 = (&k - &mconst(1, 2)).pow(2);
    let pair = |c: Rat| {
        let sq = (&two_s + &MPoly::constant(c)).pow(2);
        &(&q2 * &(&sq - &kh2)) - &e
    };
    let pref = MPoly::monomial([0, 0, 0, 16, 0], rat(3, 1) * Rat::from_integer((1u64 << 30).into()));
    [
        pref,
        lin(1, rat(-1, 1)),
        lin(1, rat(-2, 1)),
        lin(-1, rat(0, 1)),
        lin(-1, rat(-1, 1)),
        pair(rat(-1, 2)),
        pair(rat(-3, 2)),
    ]
    .iter()
    .fold(MPoly::one(), |acc, t| &acc * t)
}

/// `A(m) = q²(2m+2u−k)(2m+2u+k)` with `m → x`.
pub fn a_general() -> MPoly {
    let two_s = shifted().scale(&rat(2, 1));
    let k = mvar(VK);
    &(&mvar(VQ).pow(2) * &(&two_s - &k)) * &(&two_s + &k)
}

/// `A(m)` from the realization, `γ/2 [(m+u)² − 1/4 − ε/γ²]`, multiplied by
/// `γ²` to stay polynomial.
pub fn a_realization_scaled(c: &StructureConstants) -> MPoly {
    let ga = lift_scalar(&c.gamma);
    let ep = lift_h(&c.epsilon());
    let s2 = &shifted().pow(2) - &mconst(1, 4);
    let g2 = ga.pow(2);
    let inner = &(&g2 * &s2) - &ep;
    &(&ga * &inner) * &mconst(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadalg::casimir_printed;

    #[test]
    fn general_form_reduces_to_factorized() {
        let c = StructureConstants::printed();
        let g = phi_general(&c, &casimir_printed());
        assert_eq!(&g - &phi_factorized(), MPoly::zero());
    }

    #[test]
    fn realization_eigenvalue_matches_closed_form() {
        let c = StructureConstants::printed();
        let g2 = lift_scalar(&c.gamma).pow(2);
        assert_eq!(a_realization_scaled(&c), &g2 * &a_general());
    }

    #[test]
    fn lifting_round_trips() {
        let p = crate::coeffring::qk(rat(5, 3), 2, 1);
        assert_eq!(lower_scalar(&lift_scalar(&p)), Some(p));
        assert_eq!(lower_scalar(&mvar(VX)), None);
    }
}
