//! Quadrature on the strip `0 < x < ∞, |y| < π/2q` after `t = tanh qx`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::numerics::{composite, gauss_legendre, NeumaierSum};

use super::field::SmoothField;

pub const DEFAULT_STRIP_NODES: usize = 48;
const CONVERGENCE_TOL: f64 = 1e-8;

/// Tensor Gauss–Legendre grid with the Jacobian `1/(q(1 - t²))` folded into
/// the weights.
#[derive(Clone, Debug)]
pub struct StripGrid {
    pub points: Vec<(f64, f64)>,
    pub weights: Vec<f64>,
}

impl StripGrid {
    pub fn new(q: f64, nodes: usize) -> Result<Self> {
        let base = gauss_legendre(nodes)?;
        let rt = base.remap(0.0, 1.0);
        let ylim = FRAC_PI_2 / q;
        let ry = base.remap(-ylim, ylim);
        let mut points = Vec::with_capacity(nodes * nodes);
        let mut weights = Vec::with_capacity(nodes * nodes);
        for (t, wt) in rt.nodes.iter().zip(&rt.weights) {
            let x = t.atanh() / q;
            let jac = wt / (q * (1.0 - t * t));
            for (y, wy) in ry.nodes.iter().zip(&ry.weights) {
                points.push((x, *y));
                weights.push(jac * wy);
            }
        }
        Ok(StripGrid { points, weights })
    }

    pub fn sample(&self, f: &SmoothField) -> Vec<f64> {
        self.points.iter().map(|&(x, y)| f.value(x, y)).collect()
    }

    pub fn sum(&self, vals: impl Iterator<Item = f64>) -> (f64, f64) {
        let mut s = NeumaierSum::default();
        let mut l1 = NeumaierSum::default();
        for (w, v) in self.weights.iter().zip(vals) {
            s.add(w * v);
            l1.add((w * v).abs());
        }
        (s.value(), l1.value())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripIntegral {
    pub value: f64,
    pub error: f64,
}

/// A grid and its node-doubled refinement.
#[derive(Clone, Debug)]
pub struct StripQuadrature {
    pub coarse: StripGrid,
    pub fine: StripGrid,
}

impl StripQuadrature {
    pub fn new(q: f64, nodes: usize) -> Result<Self> {
        Ok(StripQuadrature {
            coarse: StripGrid::new(q, nodes)?,
            fine: StripGrid::new(q, 2 * nodes)?,
        })
    }

    /// Combine integrand values sampled on both grids.
    pub fn finish(&self, coarse: impl Iterator<Item = f64>, fine: impl Iterator<Item = f64>) -> Result<StripIntegral> {
        let (c, _) = self.coarse.sum(coarse);
        let (f, l1) = self.fine.sum(fine);
        self.judge(c, f, l1)
    }

    /// Like [`finish`](Self::finish) with an explicit magnitude scale on the
    /// fine grid (e.g. the size of the terms that cancelled in each value).
    pub fn finish_scaled(
        &self,
        coarse: impl Iterator<Item = f64>,
        fine: impl Iterator<Item = f64>,
        fine_scale: impl Iterator<Item = f64>,
    ) -> Result<StripIntegral> {
        let (c, _) = self.coarse.sum(coarse);
        let (f, _) = self.fine.sum(fine);
        let (_, l1) = self.fine.sum(fine_scale);
        self.judge(c, f, l1)
    }

    fn judge(&self, c: f64, f: f64, l1: f64) -> Result<StripIntegral> {
        let change = (f - c).abs();
        let scale = l1.max(f.abs());
        if change > CONVERGENCE_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NonConvergent {
                change: change / scale.max(f64::MIN_POSITIVE),
            });
        }
        Ok(StripIntegral { value: f, error: change })
    }

    pub fn integrate(&self, f: impl Fn(f64, f64) -> f64) -> Result<StripIntegral> {
        let c = self.coarse.points.iter().map(|&(x, y)| f(x, y));
        let fi = self.fine.points.iter().map(|&(x, y)| f(x, y));
        self.finish(c, fi)
    }
}

/// `∫∫_D f dx dy` with the default node count and doubling error estimate.
pub fn integrate_strip(q: f64, f: impl Fn(f64, f64) -> f64) -> Result<StripIntegral> {
    StripQuadrature::new(q, DEFAULT_STRIP_NODES)?.integrate(f)
}

/// `⟨f, g⟩` on the strip.
pub fn inner_product(f: &SmoothField, g: &SmoothField, q: f64) -> Result<f64> {
    Ok(integrate_strip(q, |x, y| f.value(x, y) * g.value(x, y))?.value)
}

/// `∫_0^∞ f dx` for integrands decaying at least like `sech² qx`, by
/// composite Gauss–Legendre on `[0, 40/q]`.
pub fn integrate_half_line(q: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
    Ok(composite(0.0, 40.0 / q, 80, 24)?.integrate(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sech_squared_integral() {
        // ∫_0^∞ sech²(2x) dx · ∫ dy = (1/2)(π/2)
        let r = integrate_strip(2.0, |x, _| 1.0 / (2.0 * x).cosh().powi(2)).unwrap();
        assert!((r.value - 0.5 * FRAC_PI_2).abs() < 1e-12);
        let h = integrate_half_line(2.0, |x| 1.0 / (2.0 * x).cosh().powi(2)).unwrap();
        assert!((h - 0.5).abs() < 1e-13);
    }

    #[test]
    fn slow_integrand_flagged() {
        // sech^{0.2} decays too slowly for the t-substitution to converge.
        let r = integrate_strip(1.0, |x, _| 1.0 / x.cosh().powf(0.2));
        assert!(matches!(r, Err(Error::NonConvergent { .. })));
    }
}
