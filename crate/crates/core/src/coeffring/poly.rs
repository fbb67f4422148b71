//! Sparse multivariate polynomials over exact rationals.
//!
//! `Poly<V>` is keyed by exponent vectors of length `V`. The same type backs the
//! `(q, k)` scalar ring of the coefficient algebra and the larger
//! `(x, u, k, q, E)` ring used for structure functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion of a binary64 value to a rational.
pub fn rat_from_f64(v: f64) -> Option<Rat> {
    BigRational::from_float(v)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<const V: usize> {
    terms: BTreeMap<[u32; V], Rat>,
}

impl<const V: usize> Default for Poly<V> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const V: usize> Poly<V> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial([0; V], c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c, 1))
    }

    pub fn monomial(exps: [u32; V], c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    /// The polynomial consisting of variable `i` alone.
    pub fn var(i: usize) -> Self {
        let mut e = [0; V];
        e[i] = 1;
        Self::monomial(e, Rat::one())
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

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; V], &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32; V]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Returns the rational value if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&[0; V]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, exps: [u32; V], c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &Rat) {
        if s.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(*e, c * s);
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Multiplies by the monomial `v_i^p`.
    pub fn shift_var(&self, i: usize, p: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = *e;
                    e[i] += p;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division by `v_i^p`; `None` if some term has a lower power.
    pub fn div_var(&self, i: usize, p: u32) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] < p {
                return None;
            }
            let mut e = *e;
            e[i] -= p;
            terms.insert(e, c.clone());
        }
        Some(Poly { terms })
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = *e1;
                for (a, b) in e.iter_mut().zip(e2.iter()) {
                    *a += *b;
                }
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Replaces variable `i` by the polynomial `value`.
    pub fn substitute(&self, i: usize, value: &Self) -> Self {
        let max = self.degree_in(i);
        let mut powers = Vec::with_capacity(max as usize + 1);
        powers.push(Self::one());
        for p in 1..=max as usize {
            let next = powers[p - 1].mul_ref(value);
            powers.push(next);
        }
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut rest = *e;
            let p = rest[i];
            rest[i] = 0;
            let mono = Self::monomial(rest, c.clone());
            out.add_assign_ref(&mono.mul_ref(&powers[p as usize]));
        }
        out
    }

    /// Exact evaluation at rational values of every variable.
    pub fn eval_rat(&self, vals: &[Rat; V]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, p) in vals.iter().zip(e.iter()) {
                for _ in 0..*p {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, vals: &[f64; V]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = rat_to_f64(c);
                for (v, p) in vals.iter().zip(e.iter()) {
                    t *= v.powi(*p as i32);
                }
                t
            })
            .sum()
    }

    /// Coefficients with respect to one variable: entry `p` multiplies `v_i^p`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); self.degree_in(i) as usize + 1];
        if self.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            let mut rest = *e;
            let p = rest[i] as usize;
            rest[i] = 0;
            out[p].add_term(rest, c.clone());
        }
        out
    }

    pub fn map_exponents(&self, f: impl Fn([u32; V]) -> [u32; V]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(f(*e), c.clone());
        }
        out
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([u32; V], Rat)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }
}

impl<const V: usize> Add for &Poly<V> {
    type Output = Poly<V>;
    fn add(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<const V: usize> Sub for &Poly<V> {
    type Output = Poly<V>;
    fn sub(self, rhs: &Poly<V>) -> Poly<V> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rat::one());
        out
    }
}

impl<const V: usize> Mul for &Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: &Poly<V>) -> Poly<V> {
        self.mul_ref(rhs)
    }
}

impl<const V: usize> Neg for &Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        self.scale(&-Rat::one())
    }
}

impl<const V: usize> Add for Poly<V> {
    type Output = Poly<V>;
    fn add(mut self, rhs: Poly<V>) -> Poly<V> {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<const V: usize> Sub for Poly<V> {
    type Output = Poly<V>;
    fn sub(mut self, rhs: Poly<V>) -> Poly<V> {
        self.add_scaled(&rhs, &-Rat::one());
        self
    }
}

impl<const V: usize> Mul for Poly<V> {
    type Output = Poly<V>;
    fn mul(self, rhs: Poly<V>) -> Poly<V> {
        self.mul_ref(&rhs)
    }
}

impl<const V: usize> Neg for Poly<V> {
    type Output = Poly<V>;
    fn neg(self) -> Poly<V> {
        self.scale(&-Rat::one())
    }
}

/// Renders a rational without a denominator when it is an integer.
pub(crate) fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Variable names used by `Display`; falls back to `v0, v1, ...`.
pub(crate) fn render<const V: usize>(p: &Poly<V>, names: &[&str]) -> String {
    if p.is_zero() {
        return "(0)".to_string();
    }
    let mut parts = Vec::new();
    for (e, c) in p.terms() {
        let mut s = fmt_rat(c);
        for (i, pow) in e.iter().enumerate() {
            let name = names.get(i).map(|s| s.to_string()).unwrap_or(format!("v{i}"));
            s.push_str(&format!(" {name}^{pow}"));
        }
        parts.push(s);
    }
    format!("({})", parts.join(" + "))
}

impl<const V: usize> fmt::Debug for Poly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self, &[]))
    }
}

/// Univariate helpers used by the rational-function layer.
impl Poly<1> {
    pub fn leading(&self) -> Option<(u32, Rat)> {
        self.terms.iter().next_back().map(|(e, c)| (e[0], c.clone()))
    }

    /// Polynomial long division: `self = quot * d + rem`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let (dd, dc) = d.leading().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((rd, rc)) = rem.leading() {
            if rd < dd {
                break;
            }
            let c = &rc / &dc;
            let t = Self::monomial([rd - dd], c);
            rem = &rem - &t.mul_ref(d);
            quot.add_assign_ref(&t);
        }
        (quot, rem)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&(Rat::one() / c)),
        }
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false)
    }
}
