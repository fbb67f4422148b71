use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Arithmetic needed to run polynomial recurrences on plain numbers and on
/// truncated Taylor series alike.
pub trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self>
{
    fn from_f64(v: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}

/// Jacobi polynomial `P_n^{(a,b)}(z)` by the three-term recurrence.
pub fn jacobi_p(n: u32, a: f64, b: f64, z: f64) -> Result<f64> {
    if a <= -1.0 || b <= -1.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParam(format!(
            "Jacobi parameters must exceed -1, got a={a}, b={b}"
        )));
    }
    Ok(jacobi_p_generic(n, a, b, z))
}

pub fn jacobi_p_generic<T: Scalar>(n: u32, a: f64, b: f64, z: T) -> T {
    let p0 = T::from_f64(1.0);
    if n == 0 {
        return p0;
    }
    // P_1 = (a+1) + (a+b+2)(z-1)/2
    let p1 = T::from_f64(0.5 * (a - b)) + z.clone() * (0.5 * (a + b + 2.0));
    if n == 1 {
        return p1;
    }
    let (mut pm2, mut pm1) = (p0, p1);
    for j in 2..=n {
        let jf = j as f64;
        let s = 2.0 * jf + a + b;
        let c0 = 2.0 * jf * (jf + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * s * (s - 2.0);
        let c2 = (s - 1.0) * (a * a - b * b);
        let c3 = 2.0 * (jf + a - 1.0) * (jf + b - 1.0) * s;
        let next = (z.clone() * pm1.clone() * c1 + pm1.clone() * c2 - pm2 * c3) * (1.0 / c0);
        pm2 = pm1;
        pm1 = next;
    }
    pm1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        for (a, b, z) in [(0.5, 2.0, 0.3), (-0.5, 0.0, -0.9), (3.0, 1.4142, 1.0)] {
            assert_eq!(jacobi_p(0, a, b, z).unwrap(), 1.0);
        }
    }

    #[test]
    fn degree_one_closed_form() {
        for (a, b, z) in [(0.5, 2.0, 0.3), (1.5, 0.25, -0.7)] {
            let expected = (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
            assert!((jacobi_p(1, a, b, z).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn legendre_special_case() {
        // P_2^{(0,0)} = (3z^2 - 1)/2
        let z: f64 = 0.37;
        assert!((jacobi_p(2, 0.0, 0.0, z).unwrap() - (3.0 * z * z - 1.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn value_at_one() {
        // P_n^{(a,b)}(1) = (a+1)_n / n!
        let (a, b) = (0.5, 2.0);
        let mut expected = 1.0;
        for j in 1..=6 {
            expected *= (a + j as f64) / j as f64;
            assert!((jacobi_p(j, a, b, 1.0).unwrap() - expected).abs() < 1e-12 * expected);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(jacobi_p(2, -1.0, 0.0, 0.1).is_err());
        assert!(jacobi_p(2, 0.0, -2.0, 0.1).is_err());
    }
}
