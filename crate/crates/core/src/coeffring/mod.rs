//! Exact coefficient ring of the channel operators.
//!
//! Elements are finite sums of `sinh^a(qx) cosh^b(qx) sin^c(qy) cos^d(qy)` with
//! scalars in `Q[q, k]`. The canonical form keeps `b, d ∈ {0, 1}` by rewriting
//! `cosh² = 1 + sinh²` and `cos² = 1 − sin²`; negative `a` carries the csch
//! factors. Two elements are equal iff their canonical maps are equal.

mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use poly::{rat, rat_from_f64, rat_to_f64, Poly, Rat};
pub(crate) use poly::{fmt_rat, render};

use crate::error::{Error, Result};

/// Polynomial in the model parameters `q` (variable 0) and `k` (variable 1).
pub type ScalarPoly = Poly<2>;

pub const Q: usize = 0;
pub const K: usize = 1;

pub fn q() -> ScalarPoly {
    ScalarPoly::var(Q)
}

pub fn k() -> ScalarPoly {
    ScalarPoly::var(K)
}

pub fn sp(c: i64) -> ScalarPoly {
    ScalarPoly::from_int(c)
}

/// `c q^i k^j`.
pub fn qk(c: Rat, i: u32, j: u32) -> ScalarPoly {
    ScalarPoly::monomial([i, j], c)
}

/// Substitutes `k -> k + by` and re-expands.
pub fn shift_k_scalar(p: &ScalarPoly, by: i64) -> ScalarPoly {
    if by == 0 {
        return p.clone();
    }
    p.substitute(K, &(k() + sp(by)))
}

pub fn render_scalar(p: &ScalarPoly) -> String {
    render(p, &["q", "k"])
}

/// Exponent key of a canonical monomial, ordered lexicographically on `(a, b, c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoKey {
    pub a: i32,
    pub b: u8,
    pub c: u32,
    pub d: u8,
}

impl MonoKey {
    pub const ONE: MonoKey = MonoKey {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
    };
}

/// A canonical monomial with its scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMonomial {
    pub a: i32,
    pub b: u8,
    pub c: u32,
    pub d: u8,
    pub scale: ScalarPoly,
}

/// A monomial before reduction; `b` and `d` may be any non-negative power.
#[derive(Clone, Debug)]
pub struct RawMonomial {
    pub a: i32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    pub scale: ScalarPoly,
}

impl RawMonomial {
    pub fn new(a: i32, b: u32, c: u32, d: u32, scale: ScalarPoly) -> Self {
        RawMonomial { a, b, c, d, scale }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffPoly {
    terms: BTreeMap<MonoKey, ScalarPoly>,
}

fn binomial(n: u32, r: u32) -> i64 {
    let mut acc: i64 = 1;
    for i in 0..r as i64 {
        acc = acc * (n as i64 - i) / (i + 1);
    }
    acc
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::scalar(ScalarPoly::one())
    }

    pub fn scalar(s: ScalarPoly) -> Self {
        Self::from_key(MonoKey::ONE, s)
    }

    pub fn int(c: i64) -> Self {
        Self::scalar(sp(c))
    }

    fn from_key(key: MonoKey, s: ScalarPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(key, s);
        }
        CoeffPoly { terms }
    }

    /// `sinh^a cosh^b sin^c cos^d` with unrestricted non-negative `b`, `d`.
    pub fn mono(a: i32, b: u32, c: u32, d: u32) -> Self {
        normalize(vec![RawMonomial::new(a, b, c, d, ScalarPoly::one())])
    }

    pub fn sinh(a: i32) -> Self {
        Self::mono(a, 0, 0, 0)
    }

    pub fn cosh(b: u32) -> Self {
        Self::mono(0, b, 0, 0)
    }

    pub fn sin(c: u32) -> Self {
        Self::mono(0, 0, c, 0)
    }

    pub fn cos(d: u32) -> Self {
        Self::mono(0, 0, 0, d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &ScalarPoly)> {
        self.terms.iter()
    }

    /// Canonical-ordered monomial list.
    pub fn monomials(&self) -> Vec<CoeffMonomial> {
        self.terms
            .iter()
            .map(|(key, s)| CoeffMonomial {
                a: key.a,
                b: key.b,
                c: key.c,
                d: key.d,
                scale: s.clone(),
            })
            .collect()
    }

    pub fn coeff(&self, key: &MonoKey) -> ScalarPoly {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Returns the scalar if the element is a pure scalar.
    pub fn as_scalar(&self) -> Option<ScalarPoly> {
        match self.terms.len() {
            0 => Some(ScalarPoly::zero()),
            1 => self.terms.get(&MonoKey::ONE).cloned(),
            _ => None,
        }
    }

    fn add_key(&mut self, key: MonoKey, s: &ScalarPoly) {
        if s.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(s.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(s);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (key, s) in &other.terms {
            self.add_key(*key, s);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        for (key, s) in &other.terms {
            self.add_key(*key, &-s);
        }
    }

    pub fn scale(&self, s: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_key(*key, &c.mul_ref(s));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CoeffPoly {
            terms: self.terms.iter().map(|(key, c)| (*key, c.scale(r))).collect(),
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut raw = Vec::with_capacity(self.len() * other.len());
        for (k1, s1) in &self.terms {
            for (k2, s2) in &other.terms {
                raw.push(RawMonomial::new(
                    k1.a + k2.a,
                    (k1.b + k2.b) as u32,
                    k1.c + k2.c,
                    (k1.d + k2.d) as u32,
                    s1.mul_ref(s2),
                ));
            }
        }
        normalize(raw)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Exact `∂/∂x`.
    pub fn derive_x(&self) -> Self {
        let mut raw = Vec::new();
        for (key, s) in &self.terms {
            let sq = s.shift_var(Q, 1);
            let a = key.a;
            if key.b == 0 {
                // d sinh^a = a q sinh^(a-1) cosh
                if a != 0 {
                    raw.push(RawMonomial::new(a - 1, 1, key.c, key.d as u32, sq.scale(&rat(a as i64, 1))));
                }
            } else {
                // d (sinh^a cosh) = a q sinh^(a-1) + (a+1) q sinh^(a+1)
                if a != 0 {
                    raw.push(RawMonomial::new(a - 1, 0, key.c, key.d as u32, sq.scale(&rat(a as i64, 1))));
                }
                if a + 1 != 0 {
                    raw.push(RawMonomial::new(a + 1, 0, key.c, key.d as u32, sq.scale(&rat(a as i64 + 1, 1))));
                }
            }
        }
        normalize(raw)
    }

    /// Exact `∂/∂y`.
    pub fn derive_y(&self) -> Self {
        let mut raw = Vec::new();
        for (key, s) in &self.terms {
            let sq = s.shift_var(Q, 1);
            let c = key.c;
            if key.d == 0 {
                // d sin^c = c q sin^(c-1) cos
                if c != 0 {
                    raw.push(RawMonomial::new(key.a, key.b as u32, c - 1, 1, sq.scale(&rat(c as i64, 1))));
                }
            } else {
                // d (sin^c cos) = c q sin^(c-1) - (c+1) q sin^(c+1)
                if c != 0 {
                    raw.push(RawMonomial::new(key.a, key.b as u32, c - 1, 0, sq.scale(&rat(c as i64, 1))));
                }
                raw.push(RawMonomial::new(key.a, key.b as u32, c + 1, 0, sq.scale(&rat(-(c as i64) - 1, 1))));
            }
        }
        normalize(raw)
    }

    /// Mixed derivative `∂x^i ∂y^j`.
    pub fn derive(&self, i: u32, j: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..i {
            out = out.derive_x();
        }
        for _ in 0..j {
            out = out.derive_y();
        }
        out
    }

    /// Substitutes `k -> k + by` in every scalar.
    pub fn shift_k(&self, by: i64) -> Self {
        let mut out = Self::zero();
        for (key, s) in &self.terms {
            out.add_key(*key, &shift_k_scalar(s, by));
        }
        out
    }

    /// Applies `f` to every scalar (used for parameter specialization).
    pub fn map_scalars(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (key, s) in &self.terms {
            out.add_key(*key, &f(s));
        }
        out
    }

    pub fn has_pole(&self) -> bool {
        self.terms.keys().any(|key| key.a < 0)
    }

    /// Binary64 value at `(q, k, x, y)`.
    pub fn eval(&self, q: f64, k: f64, x: f64, y: f64) -> Result<f64> {
        if x == 0.0 && self.has_pole() {
            return Err(Error::PoleAtOrigin);
        }
        let (sh, ch) = ((q * x).sinh(), (q * x).cosh());
        let (sn, cs) = ((q * y).sin(), (q * y).cos());
        let mut acc = 0.0;
        for (key, s) in &self.terms {
            let mut v = s.eval_f64(&[q, k]);
            v *= sh.powi(key.a);
            if key.b == 1 {
                v *= ch;
            }
            v *= sn.powi(key.c as i32);
            if key.d == 1 {
                v *= cs;
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Exact value of every scalar at `q = 1`, `k = kval`, keyed by monomial.
    pub fn sample_scalars(&self, qval: &Rat, kval: &Rat) -> BTreeMap<MonoKey, Rat> {
        let mut out = BTreeMap::new();
        for (key, s) in &self.terms {
            let v = s.eval_rat(&[qval.clone(), kval.clone()]);
            if !v.is_zero() {
                out.insert(*key, v);
            }
        }
        out
    }
}

/// Reduces raw monomials to canonical form.
pub fn normalize(raw: Vec<RawMonomial>) -> CoeffPoly {
    let mut out = CoeffPoly::zero();
    for m in raw {
        if m.scale.is_zero() {
            continue;
        }
        // cosh^b = cosh^(b mod 2) (1 + sinh^2)^(b/2)
        let hb = m.b / 2;
        let hd = m.d / 2;
        for i in 0..=hb {
            let ci = binomial(hb, i);
            for j in 0..=hd {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                let cj = binomial(hd, j) * sign;
                let key = MonoKey {
                    a: m.a + 2 * i as i32,
                    b: (m.b % 2) as u8,
                    c: m.c + 2 * j,
                    d: (m.d % 2) as u8,
                };
                out.add_key(key, &m.scale.scale(&rat(ci * cj, 1)));
            }
        }
    }
    out
}

impl Add for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        self.mul_ref(rhs)
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        self.scale_rat(&-Rat::one())
    }
}

impl Add for CoeffPoly {
    type Output = CoeffPoly;
    fn add(mut self, rhs: CoeffPoly) -> CoeffPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for CoeffPoly {
    type Output = CoeffPoly;
    fn sub(mut self, rhs: CoeffPoly) -> CoeffPoly {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Mul for CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: CoeffPoly) -> CoeffPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        self.scale_rat(&-Rat::one())
    }
}

impl fmt::Display for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(key, s)| {
                format!(
                    "{} * sinh^{} cosh^{} sin^{} cos^{}",
                    render_scalar(s),
                    key.a,
                    key.b,
                    key.c,
                    key.d
                )
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
