//! One-variable building blocks of separable fields.

use crate::numerics::{bessel_j_window, jacobi_p_generic};

use super::jet::{Jet, JET_LEN};

#[derive(Clone, Debug, PartialEq)]
pub enum Profile {
    Const(f64),
    /// `norm · tanh^k(qx) · sech^{1+δ}(qx) · P_n^{(k-1/2, δ)}(1 - 2 tanh² qx)`
    Channel {
        n: u32,
        k: f64,
        q: f64,
        delta: f64,
        norm: f64,
    },
    /// `tanh^k(qx) · sech^p(qx)`
    TanhSech { k: f64, q: f64, p: f64 },
    Cos { amp: f64, w: f64 },
    Sin { amp: f64, w: f64 },
    /// `(cos qy)^s` or `(sin qy)^s`; non-integer powers use `|base|^s`.
    TrigPower { q: f64, s: f64, cos: bool },
    Exp { amp: f64, w: f64 },
    /// `amp · J_m(κ ρ)`
    Bessel { m: u32, kappa: f64, amp: f64 },
}

fn tanh_sech(q: f64, x: f64) -> (Jet, Jet) {
    let sech = Jet::cosh(q, x).recip();
    let tanh = Jet::sinh(q, x) * sech;
    (tanh, sech)
}

impl Profile {
    pub fn value(&self, t: f64) -> f64 {
        match *self {
            Profile::Const(c) => c,
            Profile::Channel {
                n,
                k,
                q,
                delta,
                norm,
            } => {
                let th = (q * t).tanh();
                let sech = 1.0 / (q * t).cosh();
                norm * th.powf(k)
                    * sech.powf(1.0 + delta)
                    * jacobi_p_generic(n, k - 0.5, delta, 1.0 - 2.0 * th * th)
            }
            Profile::TanhSech { k, q, p } => (q * t).tanh().powf(k) * (1.0 / (q * t).cosh()).powf(p),
            Profile::Cos { amp, w } => amp * (w * t).cos(),
            Profile::Sin { amp, w } => amp * (w * t).sin(),
            Profile::TrigPower { q, s, cos } => {
                let b = if cos { (q * t).cos() } else { (q * t).sin() };
                if s.fract() == 0.0 {
                    b.powi(s as i32)
                } else {
                    b.abs().powf(s)
                }
            }
            Profile::Exp { amp, w } => amp * (w * t).exp(),
            Profile::Bessel { .. } => self.jet(t).value(),
        }
    }

    pub fn jet(&self, t: f64) -> Jet {
        match *self {
            Profile::Const(c) => Jet::constant(c),
            Profile::Channel {
                n,
                k,
                q,
                delta,
                norm,
            } => {
                let (tanh, sech) = tanh_sech(q, t);
                let z = Jet::constant(1.0) - tanh * tanh * 2.0;
                let p = jacobi_p_generic(n, k - 0.5, delta, z);
                tanh.powf(k) * sech.powf(1.0 + delta) * p * norm
            }
            Profile::TanhSech { k, q, p } => {
                let (tanh, sech) = tanh_sech(q, t);
                tanh.powf(k) * sech.powf(p)
            }
            Profile::Cos { amp, w } => Jet::cos(w, t) * amp,
            Profile::Sin { amp, w } => Jet::sin(w, t) * amp,
            Profile::TrigPower { q, s, cos } => {
                let b = if cos { Jet::cos(q, t) } else { Jet::sin(q, t) };
                if s.fract() == 0.0 {
                    b.powi(s as i32)
                } else {
                    b.abs().powf(s)
                }
            }
            Profile::Exp { amp, w } => Jet::exp(w, t) * amp,
            Profile::Bessel { m, kappa, amp } => {
                // d^n/dz^n J_m = 2^{-n} Σ_j (-1)^j C(n,j) J_{m-n+2j}
                let span = (JET_LEN - 1) as i64;
                let w = bessel_j_window(m as i64, span, kappa * t).unwrap_or_else(|_| vec![f64::NAN; 2 * span as usize + 1]);
                let at = |order: i64| w[(order + span) as usize];
                Jet::from_derivatives(kappa, |n| {
                    let mut acc = 0.0;
                    let mut binom = 1.0;
                    for j in 0..=n {
                        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                        acc += sign * binom * at(2 * j as i64 - n as i64);
                        binom = binom * (n - j) as f64 / (j + 1) as f64;
                    }
                    amp * acc / 2f64.powi(n as i32)
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(p: &Profile, t: f64) {
        let h = 1e-4;
        let j = p.jet(t);
        let d1 = (p.value(t + h) - p.value(t - h)) / (2.0 * h);
        let d2 = (p.value(t + h) - 2.0 * p.value(t) + p.value(t - h)) / (h * h);
        assert!((j.value() - p.value(t)).abs() <= 1e-14 * p.value(t).abs().max(1e-300));
        assert!((j.deriv(1) - d1).abs() <= 1e-6 * d1.abs().max(1.0), "{p:?}");
        assert!((j.deriv(2) - d2).abs() <= 1e-5 * d2.abs().max(1.0), "{p:?}");
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let profiles = [
            Profile::Channel {
                n: 2,
                k: 1.5,
                q: 1.0,
                delta: 2.0f64.sqrt(),
                norm: 1.0,
            },
            Profile::TanhSech { k: 0.5, q: 2.0, p: 3.0 },
            Profile::TrigPower { q: 1.0, s: 2.5, cos: true },
            Profile::TrigPower { q: 1.0, s: 3.0, cos: false },
            Profile::Bessel {
                m: 1,
                kappa: 3.8,
                amp: 1.0,
            },
            Profile::Bessel {
                m: 0,
                kappa: 2.4,
                amp: 2.0,
            },
        ];
        for p in &profiles {
            for t in [0.3, 0.7, 1.1] {
                fd_check(p, t);
            }
        }
    }

    #[test]
    fn channel_vanishes_at_wall() {
        let p = Profile::Channel {
            n: 1,
            k: 1.0,
            q: 1.0,
            delta: 1.0,
            norm: 1.0,
        };
        assert_eq!(p.value(0.0), 0.0);
    }
}
