//! Bessel functions of the first kind of integer order and their zeros.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 6.0;

fn series(m: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let mut term = 1.0;
    for i in 1..=m {
        term *= half / i as f64;
    }
    let mut sum = term;
    let h2 = -half * half;
    for j in 1..200 {
        term *= h2 / (j as f64 * (j + m) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// `J_0(z), ..., J_max(z)` by backward (Miller) recurrence normalized with
/// `J_0 + 2 Σ J_2k = 1`.
fn miller(max: u32, z: f64) -> Vec<f64> {
    let top = (max as f64).max(z);
    let start = (top.ceil() as u32 + 40 + (10.0 * top.cbrt()).ceil() as u32) | 1;
    let start = start + 1;
    let mut vals = vec![0.0; start as usize + 2];
    let mut jp1 = 0.0;
    let mut j = 1e-300;
    vals[start as usize] = j;
    for n in (1..=start).rev() {
        let jm1 = 2.0 * n as f64 / z * j - jp1;
        jp1 = j;
        j = jm1;
        vals[n as usize - 1] = j;
        if j.abs() > 1e250 {
            for v in vals.iter_mut() {
                *v *= 1e-250;
            }
            j *= 1e-250;
            jp1 *= 1e-250;
        }
    }
    let mut norm = vals[0];
    let mut i = 2;
    while i < vals.len() {
        norm += 2.0 * vals[i];
        i += 2;
    }
    vals.truncate(max as usize + 1);
    vals.iter().map(|v| v / norm).collect()
}

/// `J_m(z)` for `z ≥ 0`.
pub fn bessel_j(m: u32, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::InvalidParam(format!("Bessel argument must be >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    if z <= SERIES_LIMIT {
        Ok(series(m, z))
    } else {
        Ok(miller(m, z)[m as usize])
    }
}

/// `J_{m+i}` for `i` in `-span..=span`, using `J_{-n} = (-1)^n J_n`.
pub fn bessel_j_window(m: i64, span: i64, z: f64) -> Result<Vec<f64>> {
    let lo = m - span;
    let hi = m + span;
    let top = hi.unsigned_abs().max(lo.unsigned_abs()) as u32;
    let table: Vec<f64> = if z == 0.0 {
        (0..=top).map(|n| if n == 0 { 1.0 } else { 0.0 }).collect()
    } else if z <= SERIES_LIMIT {
        (0..=top).map(|n| series(n, z)).collect()
    } else {
        miller(top, z)
    };
    Ok((lo..=hi)
        .map(|n| {
            let v = table[n.unsigned_abs() as usize];
            if n < 0 && n % 2 != 0 {
                -v
            } else {
                v
            }
        })
        .collect())
}

/// McMahon's large-zero expansion for `j_{m,s}`.
pub fn mcmahon_guess(m: u32, s: u32) -> f64 {
    let mu = 4.0 * (m as f64).powi(2);
    let beta = (s as f64 + 0.5 * m as f64 - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

/// The `s`-th positive zero of `J_m`.
///
/// Sign changes are located by scanning, the bracket is then refined by
/// Newton steps started from McMahon's estimate with a bisection fallback.
pub fn bessel_zero(m: u32, s: u32) -> Result<f64> {
    if s == 0 {
        return Err(Error::InvalidParam("zero index s starts at 1".into()));
    }
    let f = |z: f64| bessel_j(m, z);
    let step = 0.2;
    let mut lo = if m == 0 { 0.1 } else { m as f64 };
    let limit = (s as f64 + 0.5 * m as f64 + 4.0) * PI + m as f64 + 50.0;
    let mut flo = f(lo)?;
    let mut found = 0;
    while lo < limit {
        let hi = lo + step;
        let fhi = f(hi)?;
        if fhi == 0.0 || flo.signum() != fhi.signum() {
            found += 1;
            if found == s {
                if fhi == 0.0 {
                    return Ok(hi);
                }
                return refine(m, lo, hi, flo, mcmahon_guess(m, s));
            }
        }
        lo = hi;
        flo = fhi;
    }
    Err(Error::BesselZeroNotFound { m, s })
}

fn refine(m: u32, mut lo: f64, mut hi: f64, mut flo: f64, guess: f64) -> Result<f64> {
    let mut x = if guess > lo && guess < hi { guess } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let w = bessel_j_window(m as i64, 1, x)?;
        let fx = w[1];
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        let d = 0.5 * (w[0] - w[2]);
        let newton = x - fx / d;
        let next = if newton > lo && newton < hi && d != 0.0 {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() < 1e-15 * x.max(1.0) || hi - lo < 1e-15 * x.max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        for m in 1..5 {
            assert_eq!(bessel_j(m, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn series_and_miller_agree_at_the_switch() {
        for m in 0..6 {
            let a = series(m, 6.0);
            let b = miller(m, 6.0)[m as usize];
            assert!((a - b).abs() < 1e-13, "m={m}: {a} vs {b}");
        }
    }

    #[test]
    fn known_values() {
        // J_0(1), J_1(1), J_0(10) from standard tables.
        assert!((bessel_j(0, 1.0).unwrap() - 0.765_197_686_557_966_6).abs() < 1e-14);
        assert!((bessel_j(1, 1.0).unwrap() - 0.440_050_585_744_933_5).abs() < 1e-14);
        assert!((bessel_j(0, 10.0).unwrap() - (-0.245_935_764_451_348_3)).abs() < 1e-13);
    }

    #[test]
    fn first_zero_of_j0() {
        let z = bessel_zero(0, 1).unwrap();
        assert!((z - 2.404_825_557_695_773).abs() < 1e-12);
    }

    #[test]
    fn zeros_are_ordered_and_close_to_mcmahon() {
        for m in 0..4 {
            let mut prev = 0.0;
            for s in 1..6 {
                let z = bessel_zero(m, s).unwrap();
                assert!(z > prev);
                assert!(bessel_j(m, z).unwrap().abs() < 1e-13);
                if s >= 3 {
                    assert!((z - mcmahon_guess(m, s)).abs() < 1e-2);
                }
                prev = z;
            }
        }
    }

    #[test]
    fn zero_index_rejected() {
        assert!(bessel_zero(0, 0).is_err());
    }
}
