//! Boundary-condition sampling and the census of separable solution branches.

use std::f64::consts::FRAC_PI_2;

use crate::error::Result;
use crate::numerics::composite;

use super::field::SmoothField;
use super::states::{channel_profile, chi_profile, chibar_profile};

pub const BOUNDARY_SAMPLES: usize = 100;
const VANISH_TOL: f64 = 1e-12;
const FAIL_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryReport {
    pub max_boundary: f64,
    pub sup_norm: f64,
    /// All samples below `1e-12 · sup`.
    pub vanishes: bool,
    /// Some sample at least `1e-3 · sup`.
    pub fails: bool,
}

impl BoundaryReport {
    /// Physical fields must vanish; unphysical ones must visibly fail.
    pub fn consistent_with(&self, physical: bool) -> bool {
        if physical {
            self.vanishes
        } else {
            self.fails
        }
    }
}

/// Samples the wall `x = 0` and the edges `y = ±π/2q`; the sup-norm is
/// estimated on an interior grid over `0 < x < 6/q`.
pub fn boundary_check(f: &SmoothField, q: f64) -> BoundaryReport {
    let ylim = FRAC_PI_2 / q;
    let xmax = 6.0 / q;
    let mut sup: f64 = 0.0;
    let grid = 41;
    for i in 1..=grid {
        let x = xmax * i as f64 / grid as f64;
        for j in 0..grid {
            let y = -ylim + 2.0 * ylim * (j as f64 + 0.5) / grid as f64;
            sup = sup.max(f.value(x, y).abs());
        }
    }
    let wall = BOUNDARY_SAMPLES / 3 + BOUNDARY_SAMPLES % 3;
    let edge = BOUNDARY_SAMPLES / 3;
    let mut max_b: f64 = 0.0;
    for j in 0..wall {
        let y = -ylim + 2.0 * ylim * (j as f64 + 0.5) / wall as f64;
        max_b = max_b.max(f.value(0.0, y).abs());
    }
    for i in 0..edge {
        let x = xmax * (i as f64 + 0.5) / edge as f64;
        max_b = max_b.max(f.value(x, ylim).abs());
        max_b = max_b.max(f.value(x, -ylim).abs());
    }
    let sup = sup.max(max_b);
    BoundaryReport {
        max_boundary: max_b,
        sup_norm: sup,
        vanishes: max_b <= VANISH_TOL * sup,
        fails: max_b >= FAIL_TOL * sup,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XBranch {
    Regular,
    Irregular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YBranch {
    Chi,
    ChiBar,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchCombo {
    pub x: XBranch,
    pub y: YBranch,
    pub edges_vanish: bool,
    /// `|φ(X)| / max|φ|` at the far probe `X = 15/q`.
    pub tail_ratio: f64,
    pub normalizable: bool,
    pub passes: bool,
}

/// The four products of the two x-solutions (lowest `n = 0` channel and its
/// reduction-of-order partner) with `χ_l` and `χ̄_l`.
pub fn branch_census(l: u32, k: f64, q: f64) -> Result<Vec<BranchCombo>> {
    let phi1 = channel_profile(0, k, q, (l + 1) as f64)?;
    let x0 = 1.0 / q;
    let far = 15.0 / q;
    // φ2 = φ1 ∫_{x0}^x sech²(qs)/φ1(s)² ds
    let integrand = |s: f64| 1.0 / ((q * s).cosh().powi(2) * phi1.value(s).powi(2));
    let phi2 = |x: f64| -> Result<f64> {
        let (lo, hi, sign) = if x >= x0 { (x0, x, 1.0) } else { (x, x0, -1.0) };
        Ok(phi1.value(x) * sign * composite(lo, hi, 30, 16)?.integrate(integrand))
    };
    let probes: Vec<f64> = (1..=60).map(|i| 0.25 * i as f64 / q).collect();
    let tail = |vals: &[f64], at_far: f64| {
        let m = vals.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(at_far.abs());
        at_far.abs() / m
    };
    let v1: Vec<f64> = probes.iter().map(|&x| phi1.value(x)).collect();
    let r1 = tail(&v1, phi1.value(far));
    let mut v2 = Vec::with_capacity(probes.len());
    for &x in &probes {
        v2.push(phi2(x)?);
    }
    let r2 = tail(&v2, phi2(far)?);

    let ylim = FRAC_PI_2 / q;
    let edge_ok = |p: &super::profile::Profile| {
        let sup = (0..200)
            .map(|j| p.value(-ylim + 2.0 * ylim * (j as f64 + 0.5) / 200.0).abs())
            .fold(0.0, f64::max);
        p.value(ylim).abs().max(p.value(-ylim).abs()) <= VANISH_TOL * sup
    };
    let chi_ok = edge_ok(&chi_profile(l, q));
    let chibar_ok = edge_ok(&chibar_profile(l as i32, q));

    let mut out = Vec::with_capacity(4);
    for (xb, ratio) in [(XBranch::Regular, r1), (XBranch::Irregular, r2)] {
        for (yb, edges) in [(YBranch::Chi, chi_ok), (YBranch::ChiBar, chibar_ok)] {
            let normalizable = ratio < 1e-6;
            out.push(BranchCombo {
                x: xb,
                y: yb,
                edges_vanish: edges,
                tail_ratio: ratio,
                normalizable,
                passes: edges && normalizable,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefn::{chibar_l, psi_bar_nl, psi_nl};

    #[test]
    fn ground_state_vanishes_on_boundary() {
        let f = psi_nl(0, 0, 1.0, 1.0).unwrap();
        let r = boundary_check(&f, 1.0);
        assert!(r.vanishes, "{r:?}");
        assert!(r.consistent_with(true));
    }

    #[test]
    fn swapped_y_factor_fails() {
        let f = psi_bar_nl(0, 0, 1.0, 1.0).unwrap();
        let r = boundary_check(&f, 1.0);
        assert!(r.fails && !r.vanishes);
        assert!(boundary_check(&chibar_l(-1, 1.0), 1.0).fails);
    }

    #[test]
    fn exactly_one_branch_survives() {
        for l in 0..4 {
            for k in [0.5, 1.0, 2.5] {
                let c = branch_census(l, k, 1.0).unwrap();
                let passing: Vec<_> = c.iter().filter(|b| b.passes).collect();
                assert_eq!(passing.len(), 1, "l={l} k={k}: {c:?}");
                assert_eq!(passing[0].x, XBranch::Regular);
                assert_eq!(passing[0].y, YBranch::Chi);
            }
        }
    }
}
