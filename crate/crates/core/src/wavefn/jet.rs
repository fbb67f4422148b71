//! Truncated univariate Taylor series used to propagate exact derivative
//! rules through products, powers and compositions.

use std::ops::{Add, Mul, Neg, Sub};

use crate::numerics::Scalar;

pub const MAX_ORDER: usize = 6;
pub const JET_LEN: usize = MAX_ORDER + 1;

/// Normalized Taylor coefficients `f^{(n)}(t0) / n!` for `n = 0..=6`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet(pub [f64; JET_LEN]);

const FACT: [f64; JET_LEN] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0];

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet(c)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// The `n`-th derivative at the expansion point.
    pub fn deriv(&self, n: usize) -> f64 {
        self.0[n] * FACT[n]
    }

    /// Jet of `t ↦ f(w t)` given the derivatives `f^{(n)}(w t0)`.
    pub fn from_derivatives(w: f64, derivs: impl Fn(usize) -> f64) -> Self {
        let mut c = [0.0; JET_LEN];
        let mut wp = 1.0;
        for (n, slot) in c.iter_mut().enumerate() {
            *slot = wp * derivs(n) / FACT[n];
            wp *= w;
        }
        Jet(c)
    }

    pub fn sinh(w: f64, t: f64) -> Self {
        let (s, c) = ((w * t).sinh(), (w * t).cosh());
        Self::from_derivatives(w, |n| if n % 2 == 0 { s } else { c })
    }

    pub fn cosh(w: f64, t: f64) -> Self {
        let (s, c) = ((w * t).sinh(), (w * t).cosh());
        Self::from_derivatives(w, |n| if n % 2 == 0 { c } else { s })
    }

    pub fn sin(w: f64, t: f64) -> Self {
        let (s, c) = (w * t).sin_cos();
        Self::from_derivatives(w, |n| [s, c, -s, -c][n % 4])
    }

    pub fn cos(w: f64, t: f64) -> Self {
        let (s, c) = (w * t).sin_cos();
        Self::from_derivatives(w, |n| [c, -s, -c, s][n % 4])
    }

    pub fn exp(w: f64, t: f64) -> Self {
        let e = (w * t).exp();
        Self::from_derivatives(w, |_| e)
    }

    pub fn scale(&self, s: f64) -> Self {
        Jet(self.0.map(|v| v * s))
    }

    pub fn recip(&self) -> Self {
        let f = &self.0;
        let mut g = [0.0; JET_LEN];
        g[0] = 1.0 / f[0];
        for n in 1..JET_LEN {
            let mut acc = 0.0;
            for j in 1..=n {
                acc += f[j] * g[n - j];
            }
            g[n] = -acc * g[0];
        }
        Jet(g)
    }

    pub fn powi(&self, n: i32) -> Self {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut out = Jet::constant(1.0);
        let mut base = *self;
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                out = out * base;
            }
            base = base * base;
            e >>= 1;
        }
        out
    }

    /// `f^a` for real `a`; integer exponents are exact at any base value,
    /// otherwise the base value must be positive.
    pub fn powf(&self, a: f64) -> Self {
        if a.fract() == 0.0 && a.abs() < 64.0 {
            return self.powi(a as i32);
        }
        let f = &self.0;
        let mut g = [0.0; JET_LEN];
        g[0] = f[0].powf(a);
        for n in 1..JET_LEN {
            let mut acc = 0.0;
            for j in 1..=n {
                acc += (a * j as f64 - (n - j) as f64) * f[j] * g[n - j];
            }
            g[n] = acc / (n as f64 * f[0]);
        }
        Jet(g)
    }

    pub fn abs(&self) -> Self {
        if self.0[0] < 0.0 {
            -*self
        } else {
            *self
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(o.0) {
            *a += b;
        }
        Jet(c)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|v| -v))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for i in 0..JET_LEN {
            for j in 0..JET_LEN - i {
                c[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(c)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, s: f64) -> Jet {
        self.scale(s)
    }
}

impl Scalar for Jet {
    fn from_f64(v: f64) -> Self {
        Jet::constant(v)
    }
}
