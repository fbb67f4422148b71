use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and weights of an interpolatory rule on `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre rule with `n` points on `(-1, 1)`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > 512 {
        return Err(Error::InvalidParam(format!(
            "Gauss-Legendre order must be in 1..=512, got {n}"
        )));
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    for i in 0..m {
        // Tricomi initial guess for the i-th largest root.
        let theta = PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut x = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        interval: (-1.0, 1.0),
    })
}

impl QuadratureRule {
    /// Affine image of the rule on `[lo, hi]`.
    pub fn remap(&self, lo: f64, hi: f64) -> QuadratureRule {
        let (a, b) = self.interval;
        let s = (hi - lo) / (b - a);
        QuadratureRule {
            nodes: self.nodes.iter().map(|x| lo + (x - a) * s).collect(),
            weights: self.weights.iter().map(|w| w * s).collect(),
            interval: (lo, hi),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut sum = NeumaierSum::default();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum.add(w * f(*x));
        }
        sum.value()
    }
}

/// Compensated summation, order-preserving.
#[derive(Default, Clone, Copy, Debug)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Composite Gauss–Legendre on `[lo, hi]` split into `panels` equal pieces.
pub fn composite(lo: f64, hi: f64, panels: usize, per_panel: usize) -> Result<QuadratureRule> {
    let base = gauss_legendre(per_panel)?;
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * per_panel);
    let mut weights = Vec::with_capacity(panels * per_panel);
    for p in 0..panels {
        let r = base.remap(lo + p as f64 * h, lo + (p + 1) as f64 * h);
        nodes.extend(r.nodes);
        weights.extend(r.weights);
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        interval: (lo, hi),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule() {
        let r = gauss_legendre(2).unwrap();
        let s = 1.0 / 3.0f64.sqrt();
        assert!((r.nodes[0] + s).abs() < 1e-15);
        assert!((r.nodes[1] - s).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn odd_monomial_vanishes() {
        let r = gauss_legendre(5).unwrap();
        assert!(r.integrate(|x| x.powi(9)).abs() < 1e-16);
    }

    #[test]
    fn remapped_exactness() {
        let r = gauss_legendre(3).unwrap().remap(0.0, 1.0);
        assert!((r.integrate(|t| t.powi(4)) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn weights_sum_to_length() {
        for n in [1, 7, 64, 200, 512] {
            let r = gauss_legendre(n).unwrap();
            let s: f64 = r.weights.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
        }
    }

    #[test]
    fn exact_to_degree_2n_minus_1() {
        for n in [3usize, 8, 20] {
            let r = gauss_legendre(n).unwrap();
            for deg in 0..(2 * n) {
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                let got = r.integrate(|x| x.powi(deg as i32));
                assert!((got - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn bad_order_rejected() {
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(513).is_err());
    }
}
