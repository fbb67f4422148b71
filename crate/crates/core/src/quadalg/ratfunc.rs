//! Exact rational functions of `k`, optionally carrying a power of `q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeffring::{fmt_rat, Poly, Rat};

pub type KPoly = Poly<1>;

pub fn kpoly_k() -> KPoly {
    KPoly::var(0)
}

pub fn kpoly_c(c: Rat) -> KPoly {
    KPoly::constant(c)
}

/// `(k + c)` as a polynomial.
pub fn k_plus(c: i64) -> KPoly {
    kpoly_k() + KPoly::from_int(c)
}

/// `num/den` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: KPoly,
    den: KPoly,
}

impl RatFunc {
    pub fn new(num: KPoly, den: KPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: KPoly::one(),
            };
        }
        let g = KPoly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let (_, lead) = d.leading().expect("nonzero denominator");
        let inv = Rat::one() / lead;
        RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        }
    }

    pub fn poly(p: KPoly) -> Self {
        RatFunc::new(p, KPoly::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::poly(kpoly_c(c))
    }

    pub fn num(&self) -> &KPoly {
        &self.num
    }

    pub fn den(&self) -> &KPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval_rat(&self, k: &Rat) -> Option<Rat> {
        let d = self.den.eval_rat(&[k.clone()]);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(&[k.clone()]) / d)
    }

    /// `None` at a pole of the reduced form.
    pub fn eval(&self, k: f64) -> Option<f64> {
        let d = self.den.eval_f64(&[k]);
        if d == 0.0 {
            return None;
        }
        Some(self.num.eval_f64(&[k]) / d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, o: &RatFunc) -> RatFunc {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

fn fmt_kpoly(p: &KPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (e, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let coef = fmt_rat(c);
        parts.push(match e[0] {
            0 => coef,
            1 => format!("{coef}*k"),
            n => format!("{coef}*k^{n}"),
        });
    }
    parts.join(" + ")
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == KPoly::one() {
            write!(f, "{}", fmt_kpoly(&self.num))
        } else {
            write!(f, "({}) / ({})", fmt_kpoly(&self.num), fmt_kpoly(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `q^q_power · f(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRat {
    pub q_power: u32,
    pub f: RatFunc,
}

impl QRat {
    pub fn eval(&self, k: f64, q: f64) -> Option<f64> {
        Some(self.f.eval(k)? * q.powi(self.q_power as i32))
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{} * {}", self.q_power, self.f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::rat;

    #[test]
    fn reduces_common_factors() {
        // (k^2 - 1)/(k - 1) = k + 1
        let f = RatFunc::new(&k_plus(1) * &k_plus(-1), k_plus(-1));
        assert_eq!(f, RatFunc::poly(k_plus(1)));
        assert_eq!(f.eval(1.0), Some(2.0));
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = RatFunc::new(KPoly::one(), k_plus(1));
        let b = RatFunc::new(KPoly::one(), k_plus(2));
        let s = &a + &b;
        // 1/(k+1) + 1/(k+2) = (2k+3)/((k+1)(k+2))
        let expected = RatFunc::new(&kpoly_k().scale(&rat(2, 1)) + &KPoly::from_int(3), &k_plus(1) * &k_plus(2));
        assert_eq!(s, expected);
        assert_eq!(&(&s - &b) - &a, RatFunc::constant(rat(0, 1)));
    }

    #[test]
    fn pole_detected() {
        let f = RatFunc::new(KPoly::one(), k_plus(-1));
        assert_eq!(f.eval(1.0), None);
        assert!(f.eval_rat(&rat(1, 1)).is_none());
    }
}
