//! Normal-ordered differential operators with coefficients in [`CoeffPoly`].
//!
//! An operator is a finite sum `Σ f_ij ∂x^i ∂y^j` with every derivative to the
//! right of its coefficient. Products are brought back to normal order with the
//! Leibniz rule, so an identity holds iff the difference is structurally empty.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeffring::{rat, CoeffPoly, MonoKey, Rat, ScalarPoly};
use crate::error::{Error, Result};
use crate::wavefn::SmoothField;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct DiffOp {
    terms: BTreeMap<(u32, u32), CoeffPoly>,
}

fn binomial(n: u32, r: u32) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..r as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    acc
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp {
            terms: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        Self::mul_by(CoeffPoly::one())
    }

    /// Multiplication by a coefficient.
    pub fn mul_by(f: CoeffPoly) -> Self {
        Self::term(0, 0, f)
    }

    pub fn scalar(s: ScalarPoly) -> Self {
        Self::mul_by(CoeffPoly::scalar(s))
    }

    /// `f ∂x^i ∂y^j`.
    pub fn term(i: u32, j: u32, f: CoeffPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert((i, j), f);
        }
        DiffOp { terms }
    }

    pub fn dx() -> Self {
        Self::term(1, 0, CoeffPoly::one())
    }

    pub fn dy() -> Self {
        Self::term(0, 1, CoeffPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> CoeffPoly {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Number of (derivative, monomial) pairs.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(CoeffPoly::len).sum()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    fn add_term(&mut self, key: (u32, u32), f: CoeffPoly) {
        if f.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(f);
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&f);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (key, f) in &other.terms {
            self.add_term(*key, f.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        for (key, f) in &other.terms {
            self.add_term(*key, -f);
        }
    }

    pub fn scale(&self, s: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (key, f) in &self.terms {
            out.add_term(*key, f.scale(s));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        let mut out = Self::zero();
        if r.is_zero() {
            return out;
        }
        for (key, f) in &self.terms {
            out.add_term(*key, f.scale_rat(r));
        }
        out
    }

    /// Left multiplication by a coefficient: `g ∘ A`.
    pub fn left_mul(&self, g: &CoeffPoly) -> Self {
        let mut out = Self::zero();
        for (key, f) in &self.terms {
            out.add_term(*key, g.mul_ref(f));
        }
        out
    }

    /// Normal-ordered product `A ∘ B`.
    pub fn compose(&self, other: &Self) -> Self {
        // (f ∂x^i ∂y^j)(g ∂x^i' ∂y^j') = f Σ C(i,a) C(j,b) (∂x^a ∂y^b g) ∂x^(i-a+i') ∂y^(j-b+j')
        let mut out = Self::zero();
        let mut deriv_cache: BTreeMap<((u32, u32), u32, u32), CoeffPoly> = BTreeMap::new();
        for (&(i, j), f) in &self.terms {
            for (&(i2, j2), g) in &other.terms {
                for a in 0..=i {
                    for b in 0..=j {
                        let dg = deriv_cache
                            .entry(((i2, j2), a, b))
                            .or_insert_with(|| g.derive(a, b));
                        if dg.is_zero() {
                            continue;
                        }
                        let c = binomial(i, a) * binomial(j, b);
                        let coeff = f.mul_ref(dg).scale_rat(&rat(c, 1));
                        out.add_term((i - a + i2, j - b + j2), coeff);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// Formal adjoint with respect to `dx dy`: `(f ∂^α)† = (−1)^|α| ∂^α ∘ f`.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), f) in &self.terms {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let d = Self::term(i, j, CoeffPoly::one());
            let g = Self::mul_by(f.clone());
            out.add_assign_ref(&d.compose(&g).scale_rat(&rat(sign, 1)));
        }
        out
    }

    /// Substitutes `k -> k + by` in every coefficient.
    pub fn shift_k_op(&self, by: i64) -> Self {
        let mut out = Self::zero();
        for (key, f) in &self.terms {
            out.add_term(*key, f.shift_k(by));
        }
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(*key, c.map_scalars(&f));
        }
        out
    }

    /// Homogeneous weight: `q`-power plus derivative order, if it is the same
    /// for every term.
    pub fn weight(&self) -> Option<u32> {
        let mut w = None;
        for (&(i, j), f) in &self.terms {
            for (_, s) in f.terms() {
                for (e, _) in s.terms() {
                    let t = e[0] + i + j;
                    match w {
                        None => w = Some(t),
                        Some(prev) if prev != t => return None,
                        _ => {}
                    }
                }
            }
        }
        w.or(Some(0))
    }

    pub fn has_pole(&self) -> bool {
        self.terms.values().any(CoeffPoly::has_pole)
    }

    /// `Σ f_ij(P) ∂x^i ∂y^j u(P)` in binary64.
    pub fn apply(&self, field: &SmoothField, q: f64, k: f64, x: f64, y: f64) -> Result<f64> {
        Ok(self.apply_with_scale(field, q, k, x, y)?.0)
    }

    /// Like [`apply`](Self::apply) but also returns `Σ |f_ij ∂^ij u|`, the
    /// natural size of the rounding error.
    pub fn apply_with_scale(
        &self,
        field: &SmoothField,
        q: f64,
        k: f64,
        x: f64,
        y: f64,
    ) -> Result<(f64, f64)> {
        self.numeric(q, k).apply_with_scale(field, x, y)
    }

    /// Coefficients specialized to binary64 parameter values, for repeated
    /// application.
    pub fn numeric(&self, q: f64, k: f64) -> NumericOp {
        NumericOp {
            q,
            order: self.order(),
            pole: self.has_pole(),
            terms: self
                .terms
                .iter()
                .map(|(&ij, f)| {
                    let monos = f
                        .terms()
                        .map(|(key, s)| (*key, s.eval_f64(&[q, k])))
                        .collect();
                    (ij, monos)
                })
                .collect(),
        }
    }

    /// Exact coefficient table at `q = qval`, `k = kval`.
    pub fn sample(&self, qval: &Rat, kval: &Rat) -> BTreeMap<((u32, u32), MonoKey), Rat> {
        let mut out = BTreeMap::new();
        for (key, f) in &self.terms {
            for (mk, v) in f.sample_scalars(qval, kval) {
                out.insert((*key, mk), v);
            }
        }
        out
    }

    /// Golden-test serialization: one `(i,j): <CoeffPoly>` line per term.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (&(i, j), f) in &self.terms {
            s.push_str(&format!("({i},{j}): {f}\n"));
        }
        s
    }
}

/// A [`DiffOp`] with its scalars evaluated at fixed `(q, k)`.
#[derive(Clone, Debug)]
pub struct NumericOp {
    q: f64,
    order: u32,
    pole: bool,
    terms: Vec<((u32, u32), Vec<(MonoKey, f64)>)>,
}

impl NumericOp {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn apply(&self, field: &SmoothField, x: f64, y: f64) -> Result<f64> {
        Ok(self.apply_with_scale(field, x, y)?.0)
    }

    pub fn apply_with_scale(&self, field: &SmoothField, x: f64, y: f64) -> Result<(f64, f64)> {
        if self.order > field.max_order() {
            return Err(Error::DerivativeOrderUnsupported {
                requested: self.order,
                max: field.max_order(),
            });
        }
        if x == 0.0 && self.pole {
            return Err(Error::PoleAtOrigin);
        }
        let partials = field.partials(x, y, self.order)?;
        let q = self.q;
        let (sh, ch) = ((q * x).sinh(), (q * x).cosh());
        let (sn, cs) = ((q * y).sin(), (q * y).cos());
        let mut acc = 0.0;
        let mut scale = 0.0;
        for ((i, j), monos) in &self.terms {
            let mut c = 0.0;
            for (key, v) in monos {
                let mut m = v * sh.powi(key.a) * sn.powi(key.c as i32);
                if key.b == 1 {
                    m *= ch;
                }
                if key.d == 1 {
                    m *= cs;
                }
                c += m;
            }
            let t = c * partials.get(*i as usize, *j as usize);
            acc += t;
            scale += t.abs();
        }
        Ok((acc, scale))
    }
}

pub fn commutator(a: &DiffOp, b: &DiffOp) -> DiffOp {
    let mut out = a.compose(b);
    out.sub_assign_ref(&b.compose(a));
    out
}

pub fn anticommutator(a: &DiffOp, b: &DiffOp) -> DiffOp {
    let mut out = a.compose(b);
    out.add_assign_ref(&b.compose(a));
    out
}

/// Sum of all six orderings of the product of `a`, `b`, `c`.
pub fn triple_sym(a: &DiffOp, b: &DiffOp, c: &DiffOp) -> DiffOp {
    let ab = a.compose(b);
    let ba = b.compose(a);
    let ac = a.compose(c);
    let ca = c.compose(a);
    let bc = b.compose(c);
    let cb = c.compose(b);
    let mut out = ab.compose(c);
    out.add_assign_ref(&ac.compose(b));
    out.add_assign_ref(&ba.compose(c));
    out.add_assign_ref(&bc.compose(a));
    out.add_assign_ref(&ca.compose(b));
    out.add_assign_ref(&cb.compose(a));
    out
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale_rat(&-Rat::one())
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(mut self, rhs: DiffOp) -> DiffOp {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(mut self, rhs: DiffOp) -> DiffOp {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale_rat(&-Rat::one())
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{q, sp};

    #[test]
    fn leibniz_example() {
        let s = DiffOp::mul_by(CoeffPoly::sin(1));
        let lhs = DiffOp::dy().compose(&s);
        let expected = &DiffOp::term(0, 1, CoeffPoly::sin(1)) + &DiffOp::mul_by(CoeffPoly::cos(1).scale(&q()));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn dx_squared() {
        assert_eq!(DiffOp::dx().compose(&DiffOp::dx()), DiffOp::term(2, 0, CoeffPoly::one()));
    }

    #[test]
    fn commutator_basics() {
        let a = &DiffOp::term(2, 1, CoeffPoly::mono(-1, 1, 2, 0)) + &DiffOp::mul_by(CoeffPoly::cos(1));
        assert!(commutator(&a, &a).is_zero());
        let b = DiffOp::term(1, 0, CoeffPoly::sinh(2));
        assert_eq!(commutator(&a, &b), -commutator(&b, &a));
        let one = DiffOp::identity();
        assert_eq!(anticommutator(&one, &b), b.scale(&sp(2)));
    }

    #[test]
    fn shift_k_roundtrip() {
        let a = DiffOp::term(1, 1, CoeffPoly::scalar(crate::coeffring::k().pow(3)));
        assert_eq!(a.shift_k_op(1).shift_k_op(-1), a);
    }

    #[test]
    fn text_serialization_is_sorted() {
        let a = &DiffOp::term(0, 2, CoeffPoly::one()) + &DiffOp::term(1, 0, CoeffPoly::one());
        let text = a.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("(0,2)"));
        assert!(lines[1].starts_with("(1,0)"));
    }

    #[test]
    fn triple_sym_of_identity() {
        let one = DiffOp::identity();
        assert_eq!(triple_sym(&one, &one, &one), one.scale(&sp(6)));
    }
}
