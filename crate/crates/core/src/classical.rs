//! Phase-space functions, Poisson brackets and the quadratic Poisson algebra
//! of the classical channel.
//!
//! Coordinates are `X, Y, P_X, P_Y`; the coefficient ring is the one of
//! [`crate::coeffring`] with its two scalar variables read as `Q` and the
//! parameter `Kparam` (written `K` in formulas, not to be confused with the
//! Casimir).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::coeffring::{k, q, qk, rat, CoeffPoly, ScalarPoly};
use crate::error::{Error, Result};
use crate::quadalg::{HPoly, StructureConstants};

pub fn big_q() -> ScalarPoly {
    q()
}

pub fn kparam() -> ScalarPoly {
    k()
}

/// Polynomial in `P_X, P_Y` with coefficients in the canonical ring.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PhaseFunction {
    terms: BTreeMap<(u32, u32), CoeffPoly>,
}

impl PhaseFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeff(f: CoeffPoly) -> Self {
        Self::term(0, 0, f)
    }

    pub fn scalar(s: ScalarPoly) -> Self {
        Self::coeff(CoeffPoly::scalar(s))
    }

    /// `f · P_X^i P_Y^j`
    pub fn term(i: u32, j: u32, f: CoeffPoly) -> Self {
        let mut out = Self::zero();
        out.add_term((i, j), f);
        out
    }

    pub fn px() -> Self {
        Self::term(1, 0, CoeffPoly::one())
    }

    pub fn py() -> Self {
        Self::term(0, 1, CoeffPoly::one())
    }

    fn add_term(&mut self, key: (u32, u32), f: CoeffPoly) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(CoeffPoly::zero);
        slot.add_assign_ref(&f);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.values().map(CoeffPoly::len).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn momentum_coeff(&self, i: u32, j: u32) -> CoeffPoly {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(CoeffPoly::zero)
    }

    pub fn scale(&self, s: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (key, f) in &self.terms {
            out.add_term(*key, f.scale(s));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::coeff(CoeffPoly::one()), |acc, _| &acc * self)
    }

    pub fn d_x(&self) -> Self {
        self.map_coeffs(CoeffPoly::derive_x)
    }

    pub fn d_y(&self) -> Self {
        self.map_coeffs(CoeffPoly::derive_y)
    }

    fn map_coeffs(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(*key, f(c));
        }
        out
    }

    pub fn d_px(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), c.scale_rat(&rat(i as i64, 1)));
            }
        }
        out
    }

    pub fn d_py(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term((i, j - 1), c.scale_rat(&rat(j as i64, 1)));
            }
        }
        out
    }

    /// Set `P_Y = 0`.
    pub fn at_py_zero(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                out.add_term((i, 0), c.clone());
            }
        }
        out
    }

    pub fn eval(&self, big_q: f64, kparam: f64, x: f64, y: f64, px: f64, py: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&(i, j), c) in &self.terms {
            acc += c.eval(big_q, kparam, x, y)? * px.powi(i as i32) * py.powi(j as i32);
        }
        Ok(acc)
    }
}

impl Add for &PhaseFunction {
    type Output = PhaseFunction;
    fn add(self, o: &PhaseFunction) -> PhaseFunction {
        let mut out = self.clone();
        for (key, f) in &o.terms {
            out.add_term(*key, f.clone());
        }
        out
    }
}

impl Sub for &PhaseFunction {
    type Output = PhaseFunction;
    fn sub(self, o: &PhaseFunction) -> PhaseFunction {
        self + &(-o)
    }
}

impl Neg for &PhaseFunction {
    type Output = PhaseFunction;
    fn neg(self) -> PhaseFunction {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &PhaseFunction {
    type Output = PhaseFunction;
    fn mul(self, o: &PhaseFunction) -> PhaseFunction {
        let mut out = PhaseFunction::zero();
        for (&(i, j), a) in &self.terms {
            for (&(m, n), b) in &o.terms {
                out.add_term((i + m, j + n), a.mul_ref(b));
            }
        }
        out
    }
}

impl fmt::Display for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((i, j), c)| format!("[{c}]*PX^{i}*PY^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PhaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `{f, g} = f_X g_{P_X} − f_{P_X} g_X + f_Y g_{P_Y} − f_{P_Y} g_Y`
pub fn poisson(f: &PhaseFunction, g: &PhaseFunction) -> PhaseFunction {
    let x = &(&f.d_x() * &g.d_px()) - &(&f.d_px() * &g.d_x());
    let y = &(&f.d_y() * &g.d_py()) - &(&f.d_py() * &g.d_y());
    &x + &y
}

/// `re + i·im`
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexPhase {
    pub re: PhaseFunction,
    pub im: PhaseFunction,
}

impl ComplexPhase {
    pub fn conj(&self) -> Self {
        ComplexPhase {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexPhase {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexPhase {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    /// The real part, provided the imaginary part vanishes identically.
    pub fn into_real(self) -> Option<PhaseFunction> {
        self.im.is_zero().then_some(self.re)
    }
}

#[derive(Clone, Debug)]
pub struct ClassicalCatalog {
    pub h: PhaseFunction,
    pub l: PhaseFunction,
    pub r: PhaseFunction,
    pub rbar: PhaseFunction,
    pub eta: ComplexPhase,
    pub etabar: ComplexPhase,
    pub c: PhaseFunction,
}

fn m(a: i32, b: u32, c: u32, d: u32, s: ScalarPoly) -> CoeffPoly {
    CoeffPoly::mono(a, b, c, d).scale(&s)
}

fn one() -> ScalarPoly {
    qk(rat(1, 1), 0, 0)
}

/// `Q² K²`
fn q2k2() -> ScalarPoly {
    qk(rat(1, 1), 2, 2)
}

pub fn classical_catalog() -> Result<ClassicalCatalog> {
    let px = PhaseFunction::px();
    let py = PhaseFunction::py();
    let px2 = &px * &px;
    let py2 = &py * &py;
    let pxy = &px * &py;
    let cosh2 = PhaseFunction::coeff(m(0, 2, 0, 0, one()));

    let h = &(&cosh2 * &(&px2 + &py2)) + &PhaseFunction::coeff(m(-2, 0, 0, 0, q2k2()));
    let l = py2.clone();
    let r = [
        &PhaseFunction::coeff(m(0, 2, 2, 0, one())) * &px2,
        &PhaseFunction::coeff(m(1, 1, 1, 1, qk(rat(-2, 1), 0, 0))) * &pxy,
        &PhaseFunction::coeff(m(2, 0, 0, 2, one())) * &py2,
        PhaseFunction::coeff(m(-2, 0, 2, 0, q2k2())),
    ]
    .iter()
    .fold(PhaseFunction::zero(), |acc, t| &acc + t);
    let rbar = [
        &PhaseFunction::coeff(m(0, 2, 0, 2, one())) * &px2,
        &PhaseFunction::coeff(m(1, 1, 1, 1, qk(rat(2, 1), 0, 0))) * &pxy,
        &PhaseFunction::coeff(m(2, 0, 2, 0, one())) * &py2,
        PhaseFunction::coeff(m(-2, 0, 0, 2, q2k2())),
    ]
    .iter()
    .fold(PhaseFunction::zero(), |acc, t| &acc + t);

    let qk1 = qk(rat(-1, 1), 1, 1);
    let eta = ComplexPhase {
        re: PhaseFunction::coeff(m(-1, 0, 1, 0, qk1.clone())),
        im: &(&PhaseFunction::coeff(m(0, 1, 1, 0, one())) * &px) - &(&PhaseFunction::coeff(m(1, 0, 0, 1, one())) * &py),
    };
    let etabar = ComplexPhase {
        re: PhaseFunction::coeff(m(-1, 0, 0, 1, qk1)),
        im: &(&PhaseFunction::coeff(m(0, 1, 0, 1, one())) * &px) + &(&PhaseFunction::coeff(m(1, 0, 1, 0, one())) * &py),
    };
    let sym = eta.conj().mul(&etabar).add(&etabar.conj().mul(&eta));
    let sym = sym
        .into_real()
        .ok_or_else(|| Error::NoMatch("η*η̄ + η̄*η has an imaginary part".into()))?;
    let c = (&py * &sym).scale(&qk(rat(2, 1), 1, 0));
    Ok(ClassicalCatalog {
        h,
        l,
        r,
        rbar,
        eta,
        etabar,
        c,
    })
}

/// Coefficients of the Poisson algebra as polynomials in `H_c` over `Q[Q, K]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalConstants {
    pub alpha: HPoly,
    pub gamma: HPoly,
    pub a: HPoly,
    pub delta: HPoly,
    pub epsilon: HPoly,
    pub zeta: HPoly,
    pub d: HPoly,
    pub z: HPoly,
}

impl ClassicalConstants {
    /// `α_c = γ_c = −8Q²`, `δ_c = 8Q² H_c`, `ε_c = −16Q⁴K²`, the rest zero.
    pub fn printed() -> Self {
        ClassicalConstants {
            alpha: HPoly::constant(qk(rat(-8, 1), 2, 0)),
            gamma: HPoly::constant(qk(rat(-8, 1), 2, 0)),
            a: HPoly::default(),
            delta: HPoly::from_coeffs(vec![ScalarPoly::zero(), qk(rat(8, 1), 2, 0)]),
            epsilon: HPoly::constant(qk(rat(-16, 1), 4, 2)),
            zeta: HPoly::default(),
            d: HPoly::default(),
            z: HPoly::default(),
        }
    }

    /// Leading order of the quantum constants under `q = Qħ`, `k = K/ħ`.
    ///
    /// `C = iħ C_c` turns `[A, C]` into `−ħ² {A_c, C_c}`, so each classical
    /// coefficient is minus the `ħ²` part of the quantum one. Terms of lower
    /// order in `ħ` would make the limit singular and are rejected.
    pub fn from_quantum(c: &StructureConstants) -> Result<Self> {
        let map = |p: &HPoly| -> Result<HPoly> {
            let mut out = Vec::new();
            for coeff in &p.0 {
                let mut kept = Vec::new();
                for (e, v) in coeff.terms() {
                    let order = e[0] as i64 - e[1] as i64;
                    if order < 2 {
                        return Err(Error::NoMatch(format!(
                            "coefficient term q^{} k^{} diverges in the classical limit",
                            e[0], e[1]
                        )));
                    }
                    if order == 2 {
                        kept.push((*e, -v.clone()));
                    }
                }
                out.push(ScalarPoly::from_terms(kept));
            }
            Ok(HPoly::from_coeffs(out))
        };
        Ok(ClassicalConstants {
            alpha: map(&c.alpha_h())?,
            gamma: map(&c.gamma_h())?,
            a: map(&c.a_h())?,
            delta: map(&c.delta())?,
            epsilon: map(&c.epsilon())?,
            zeta: map(&c.zeta())?,
            d: map(&c.d())?,
            z: map(&c.z())?,
        })
    }
}

/// `Σ c_i H_c^i` as a phase function.
fn in_h(p: &HPoly, h: &PhaseFunction) -> PhaseFunction {
    let mut acc = PhaseFunction::zero();
    for c in p.0.iter().rev() {
        acc = &(&acc * h) + &PhaseFunction::scalar(c.clone());
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalCheck {
    pub id: &'static str,
    pub holds: bool,
    pub residual_term_count: usize,
}

fn check(id: &'static str, residual: PhaseFunction) -> ClassicalCheck {
    ClassicalCheck {
        id,
        holds: residual.is_zero(),
        residual_term_count: residual.term_count(),
    }
}

/// Relations of the Poisson algebra on `A_c = R_c`, `B_c = L_c`.
pub struct PoissonResiduals {
    pub ab: PhaseFunction,
    pub ac: PhaseFunction,
    pub bc: PhaseFunction,
    pub casimir: PhaseFunction,
}

pub fn poisson_residuals(cat: &ClassicalCatalog, c: &ClassicalConstants) -> PoissonResiduals {
    let a = &cat.r;
    let b = &cat.l;
    let h = &cat.h;
    let (al, ga, aa) = (in_h(&c.alpha, h), in_h(&c.gamma, h), in_h(&c.a, h));
    let (de, ep, ze) = (in_h(&c.delta, h), in_h(&c.epsilon, h), in_h(&c.zeta, h));
    let (d, z) = (in_h(&c.d, h), in_h(&c.z, h));
    let a2 = a * a;
    let b2 = b * b;
    let ab = a * b;
    let two = PhaseFunction::scalar(qk(rat(2, 1), 0, 0));

    let ab_res = &poisson(a, b) - &cat.c;
    let ac_rhs = [&al * &a2, &(&two * &ga) * &ab, &de * a, &ep * b, ze.clone()]
        .iter()
        .fold(PhaseFunction::zero(), |acc, t| &acc + t);
    let ac_res = &poisson(a, &cat.c) - &ac_rhs;
    let bc_rhs = [
        &aa * &a2,
        -&(&ga * &b2),
        -&(&(&two * &al) * &ab),
        &d * a,
        -&(&de * b),
        z.clone(),
    ]
    .iter()
    .fold(PhaseFunction::zero(), |acc, t| &acc + t);
    let bc_res = &poisson(b, &cat.c) - &bc_rhs;

    // Leading ħ order of the quantum Casimir with commuting products.
    let third2 = PhaseFunction::scalar(qk(rat(2, 3), 0, 0));
    let casimir = [
        &cat.c * &cat.c,
        &(&third2 * &aa) * &(&a2 * a),
        -&(&(&two * &al) * &(&a2 * b)),
        -&(&(&two * &ga) * &(a * &b2)),
        &d * &a2,
        -&(&(&two * &de) * &ab),
        -&(&ep * &b2),
        &(&two * &z) * a,
        -&(&(&two * &ze) * b),
    ]
    .iter()
    .fold(PhaseFunction::zero(), |acc, t| &acc + t);
    PoissonResiduals {
        ab: ab_res,
        ac: ac_res,
        bc: bc_res,
        casimir,
    }
}

pub fn jacobi_residual(f: &PhaseFunction, g: &PhaseFunction, h: &PhaseFunction) -> PhaseFunction {
    let t1 = poisson(f, &poisson(g, h));
    let t2 = poisson(g, &poisson(h, f));
    let t3 = poisson(h, &poisson(f, g));
    &(&t1 + &t2) + &t3
}

/// Every classical check, in a fixed order.
pub fn verify_poisson_algebra() -> Result<Vec<ClassicalCheck>> {
    let cat = classical_catalog()?;
    let printed = ClassicalConstants::printed();
    let res = poisson_residuals(&cat, &printed);
    let sum = &(&(&cat.l + &cat.r) + &cat.rbar) - &cat.h;
    let eta_sq = cat
        .eta
        .mul(&cat.eta.conj())
        .add(&cat.etabar.mul(&cat.etabar.conj()));
    let eta_res = match eta_sq.into_real() {
        Some(re) => &re - &(&cat.r + &cat.rbar),
        // A surviving imaginary part counts as a failure.
        None => PhaseFunction::coeff(CoeffPoly::one()),
    };
    let map_res = match crate::quadalg::extract_structure_constants(crate::model2d::catalog()) {
        Ok(qc) => ClassicalConstants::from_quantum(&qc)? == printed,
        Err(_) => false,
    };
    Ok(vec![
        check("poisson-a-b", res.ab),
        check("poisson-a-c", res.ac),
        check("poisson-b-c", res.bc),
        check("classical-casimir", res.casimir),
        check("poisson-h-r", poisson(&cat.h, &cat.r)),
        check("poisson-h-l", poisson(&cat.h, &cat.l)),
        check("classical-sum-rule", sum),
        check("eta-modulus", eta_res),
        check("jacobi-a-b-c", jacobi_residual(&cat.r, &cat.l, &cat.c)),
        ClassicalCheck {
            id: "quantum-classical-map",
            holds: map_res,
            residual_term_count: usize::from(!map_res),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_bracket() {
        let sinh = PhaseFunction::coeff(CoeffPoly::sinh(1));
        let got = poisson(&PhaseFunction::px(), &sinh);
        let want = PhaseFunction::coeff(CoeffPoly::cosh(1).scale(&qk(rat(-1, 1), 1, 0)));
        assert_eq!(got, want);
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let cat = classical_catalog().unwrap();
        assert_eq!(poisson(&cat.r, &cat.l), -&poisson(&cat.l, &cat.r));
    }

    #[test]
    fn sum_rule_and_momentum_part() {
        let cat = classical_catalog().unwrap();
        let rr = &cat.r + &cat.rbar;
        assert_eq!(rr.momentum_coeff(2, 0), CoeffPoly::cosh(2));
        assert_eq!(rr.momentum_coeff(0, 2), CoeffPoly::sinh(2));
        assert!(rr.momentum_coeff(1, 1).is_zero());
        assert_eq!(&(&rr + &cat.l), &cat.h);
    }

    #[test]
    fn c_vanishes_without_py() {
        let cat = classical_catalog().unwrap();
        assert!(cat.c.at_py_zero().is_zero());
    }

    #[test]
    fn quantum_constants_map_to_printed() {
        let q = StructureConstants::printed();
        assert_eq!(ClassicalConstants::from_quantum(&q).unwrap(), ClassicalConstants::printed());
    }

    #[test]
    fn all_checks_hold() {
        for c in verify_poisson_algebra().unwrap() {
            assert!(c.holds, "{} has {} residual terms", c.id, c.residual_term_count);
        }
    }
}
