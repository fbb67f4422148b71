//! Finite-difference solver for the separated x-equation
//! `-(c φ')' + W φ = E φ` with `c = cosh² qx` and Dirichlet ends.

use crate::error::{Error, Result};

/// Symmetric tridiagonal discretization on the interior nodes of a uniform
/// grid over `(0, x_max)`.
#[derive(Clone, Debug)]
pub struct FDOperator1D {
    pub grid: Vec<f64>,
    pub h: f64,
    pub delta: f64,
    pub k: f64,
    pub q: f64,
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

fn potential(delta: f64, k: f64, q: f64, x: f64) -> f64 {
    let ch2 = (q * x).cosh().powi(2);
    let sh2 = (q * x).sinh().powi(2);
    q * q * (delta * delta - 1.0) * ch2 + q * q * k * (k - 1.0) / sh2
}

impl FDOperator1D {
    pub fn new(delta: f64, k: f64, q: f64, x_max: f64, intervals: usize) -> Result<Self> {
        if !(k > 0.0) || !(q > 0.0) || !(x_max > 0.0) {
            return Err(Error::InvalidParam(format!(
                "fd operator needs k, q, x_max > 0 (k={k}, q={q}, x_max={x_max})"
            )));
        }
        if intervals < 3 {
            return Err(Error::InvalidParam(format!("need at least 3 intervals, got {intervals}")));
        }
        let h = x_max / intervals as f64;
        let c = |x: f64| (q * x).cosh().powi(2);
        let grid: Vec<f64> = (1..intervals).map(|i| i as f64 * h).collect();
        let h2 = h * h;
        let diag = grid
            .iter()
            .map(|&x| (c(x - 0.5 * h) + c(x + 0.5 * h)) / h2 + potential(delta, k, q, x))
            .collect();
        let off = grid[..grid.len() - 1]
            .iter()
            .map(|&x| -c(x + 0.5 * h) / h2)
            .collect();
        Ok(FDOperator1D {
            grid,
            h,
            delta,
            k,
            q,
            diag,
            off,
        })
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm sequence count).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let b2 = if i == 0 { 0.0 } else { self.off[i - 1].powi(2) };
            d = self.diag[i] - lambda - if i == 0 { 0.0 } else { b2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[i].abs() + lambda.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `count` lowest eigenvalues in ascending order, by bisection.
    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (0..count.min(n))
            .map(|j| {
                let (mut a, mut b) = (lo, hi);
                for _ in 0..400 {
                    let mid = 0.5 * (a + b);
                    if self.count_below(mid) > j {
                        b = mid;
                    } else {
                        a = mid;
                    }
                    if b - a <= 1e-14 * mid.abs().max(1.0) {
                        break;
                    }
                }
                0.5 * (a + b)
            })
            .collect()
    }
}

/// Eigenvalues on two grids and their Richardson extrapolation.
#[derive(Clone, Debug, PartialEq)]
pub struct FdCheck {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub extrapolated: Vec<f64>,
    pub truncation_shift: f64,
}

pub const FD_EIGEN_COUNT: usize = 3;

/// Lowest eigenvalues of the channel with transverse parameter `delta`
/// on `intervals` and `2·intervals` grids; the extrapolation assumes
/// second-order convergence.
pub fn fd_cross_check(delta: f64, k: f64, q: f64, x_max: f64, intervals: usize) -> Result<FdCheck> {
    let coarse = FDOperator1D::new(delta, k, q, x_max, intervals)?.lowest_eigenvalues(FD_EIGEN_COUNT);
    let fine_op = FDOperator1D::new(delta, k, q, x_max, 2 * intervals)?;
    let fine = fine_op.lowest_eigenvalues(FD_EIGEN_COUNT);
    let wide = FDOperator1D::new(delta, k, q, 2.0 * x_max, 4 * intervals)?
        .lowest_eigenvalues(FD_EIGEN_COUNT);
    let truncation_shift = fine
        .iter()
        .zip(&wide)
        .map(|(a, b)| ((a - b) / a).abs())
        .fold(0.0, f64::max);
    if truncation_shift > 1e-4 {
        return Err(Error::TruncationTooSmall {
            shift: truncation_shift,
        });
    }
    let extrapolated = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();
    Ok(FdCheck {
        coarse,
        fine,
        extrapolated,
        truncation_shift,
    })
}

/// Observed convergence order of eigenvalue `index` from grids with
/// `intervals`, `2·intervals` and `4·intervals` cells, measured against
/// `exact`. Returns the error ratio between the two coarser grids and the
/// corresponding order `log2(ratio)`.
pub fn fd_convergence_order(
    delta: f64,
    k: f64,
    q: f64,
    x_max: f64,
    intervals: usize,
    index: usize,
    exact: f64,
) -> Result<(f64, f64)> {
    let mut errs = Vec::with_capacity(3);
    for mult in [1, 2, 4] {
        let ev = FDOperator1D::new(delta, k, q, x_max, mult * intervals)?.lowest_eigenvalues(index + 1);
        errs.push((ev[index] - exact).abs());
    }
    let ratio = errs[1] / errs[2];
    Ok((ratio, ratio.log2()))
}
