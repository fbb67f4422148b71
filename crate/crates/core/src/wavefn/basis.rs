//! The basis diagonalizing `H` and `R` together, built by diagonalizing
//! the quadrature matrix of `R` inside each energy multiplet.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::diffalg::NumericOp;
use crate::error::{Error, Result};
use crate::model2d::catalog;

use super::field::SmoothField;
use super::quad::{StripGrid, StripQuadrature, DEFAULT_STRIP_NODES};
use super::states::psi_nl;

const GRAM_COND_LIMIT: f64 = 1e8;
const PHASE_TOL: f64 = 1e-8;

/// `ψ_{n,l}` with `2n + l = N`, ordered by increasing `n`.
pub fn multiplet(n_total: u32, k: f64, q: f64) -> Result<Vec<((u32, u32), SmoothField)>> {
    (0..=n_total / 2)
        .map(|n| {
            let l = n_total - 2 * n;
            Ok(((n, l), psi_nl(n, l, k, q)?))
        })
        .collect()
}

/// Values of `f` (or `A f`) on a grid, with the magnitude of the terms that
/// produced each value.
fn sample(grid: &StripGrid, f: &SmoothField, op: Option<&NumericOp>) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut vals = Vec::with_capacity(grid.points.len());
    let mut scales = Vec::with_capacity(grid.points.len());
    for &(x, y) in &grid.points {
        let (v, s) = match op {
            Some(a) => a.apply_with_scale(f, x, y)?,
            None => {
                let v = f.value(x, y);
                (v, v.abs())
            }
        };
        vals.push(v);
        scales.push(s);
    }
    Ok((vals, scales))
}

/// `M_ab = ⟨f_a, A f_b⟩` by strip quadrature; `A = 1` when `op` is `None`.
pub fn operator_matrix(fields: &[SmoothField], op: Option<&NumericOp>, quad: &StripQuadrature) -> Result<DMatrix<f64>> {
    let m = fields.len();
    let mut plain = Vec::with_capacity(m);
    let mut applied = Vec::with_capacity(m);
    for f in fields {
        let pc = sample(&quad.coarse, f, None)?.0;
        let pf = sample(&quad.fine, f, None)?.0;
        if op.is_some() {
            applied.push((sample(&quad.coarse, f, op)?.0, sample(&quad.fine, f, op)?));
        } else {
            let s = pf.iter().map(|v| v.abs()).collect();
            applied.push((pc.clone(), (pf.clone(), s)));
        }
        plain.push((pc, pf));
    }
    let mut out = DMatrix::zeros(m, m);
    for a in 0..m {
        for b in 0..m {
            let c = plain[a].0.iter().zip(&applied[b].0).map(|(u, v)| u * v);
            let f = plain[a].1.iter().zip(&applied[b].1 .0).map(|(u, v)| u * v);
            let s = plain[a].1.iter().zip(&applied[b].1 .1).map(|(u, v)| u.abs() * v);
            out[(a, b)] = quad.finish_scaled(c, f, s)?.value;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SecondBasisState {
    pub nu: u32,
    /// Numerical eigenvalue of `R`.
    pub r_numeric: f64,
    /// Expansion coefficients on the multiplet `ψ_{n,l}`.
    pub coeffs: Vec<f64>,
    pub field: SmoothField,
}

#[derive(Clone, Debug)]
pub struct SecondBasis {
    pub n_total: u32,
    pub k: f64,
    pub q: f64,
    pub members: Vec<(u32, u32)>,
    pub psi: Vec<SmoothField>,
    pub gram: DMatrix<f64>,
    pub gram_cond: f64,
    pub r_matrix: DMatrix<f64>,
    pub states: Vec<SecondBasisState>,
}

impl SecondBasis {
    /// Coefficient matrix with one column per state.
    pub fn coefficient_matrix(&self) -> DMatrix<f64> {
        let m = self.states.len();
        DMatrix::from_fn(m, m, |a, s| self.states[s].coeffs[a])
    }

    /// Change of basis `Cᵀ M C` for a matrix given on the `ψ` multiplet.
    pub fn transform(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let c = self.coefficient_matrix();
        c.transpose() * m * c
    }
}

/// Orthonormal `Ψ_{N,N-ν}` spanning the `E_N` eigenspace, in increasing `ν`.
///
/// Each state is signed so that its overlap with the first multiplet member
/// (in `(n,l)` order) having a nonzero overlap is positive.
pub fn second_basis(n_total: u32, k: f64, q: f64) -> Result<SecondBasis> {
    second_basis_with(n_total, k, q, DEFAULT_STRIP_NODES)
}

pub fn second_basis_with(n_total: u32, k: f64, q: f64, nodes: usize) -> Result<SecondBasis> {
    let members = multiplet(n_total, k, q)?;
    let (keys, psi): (Vec<_>, Vec<_>) = members.into_iter().unzip();
    let quad = StripQuadrature::new(q, nodes)?;
    let gram = operator_matrix(&psi, None, &quad)?;
    let r_op = catalog().r.numeric(q, k);
    let r_raw = operator_matrix(&psi, Some(&r_op), &quad)?;
    let r_matrix = (&r_raw + r_raw.transpose()) * 0.5;

    let ge = SymmetricEigen::new(gram.clone());
    let gmax = ge.eigenvalues.max();
    let gmin = ge.eigenvalues.min();
    let gram_cond = if gmin > 0.0 { gmax / gmin } else { f64::INFINITY };
    if gram_cond > GRAM_COND_LIMIT {
        return Err(Error::DegenerateGram { cond: gram_cond });
    }
    let inv_sqrt = DMatrix::from_diagonal(&ge.eigenvalues.map(|v| 1.0 / v.sqrt()));
    let s = &ge.eigenvectors * inv_sqrt * ge.eigenvectors.transpose();
    let reduced = &s * &r_matrix * &s;
    let re = SymmetricEigen::new((&reduced + reduced.transpose()) * 0.5);
    let mut order: Vec<usize> = (0..re.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| re.eigenvalues[a].total_cmp(&re.eigenvalues[b]));

    let parity = n_total % 2;
    let mut states = Vec::with_capacity(order.len());
    for (rank, &col) in order.iter().enumerate() {
        let mut c = &s * re.eigenvectors.column(col);
        let overlaps = &gram * &c;
        if let Some(first) = overlaps.iter().find(|v| v.abs() > PHASE_TOL) {
            if *first < 0.0 {
                c = -c;
            }
        }
        let coeffs: Vec<f64> = c.iter().copied().collect();
        let nu = parity + 2 * rank as u32;
        let parts: Vec<(f64, &SmoothField)> = coeffs.iter().copied().zip(psi.iter()).collect();
        let field = SmoothField::combine(&parts, format!("Psi:{n_total},{}", n_total - nu));
        states.push(SecondBasisState {
            nu,
            r_numeric: re.eigenvalues[col],
            coeffs,
            field,
        });
    }
    Ok(SecondBasis {
        n_total,
        k,
        q,
        members: keys,
        psi,
        gram,
        gram_cond,
        r_matrix,
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefn::states::r_eigenvalue;

    #[test]
    fn ground_multiplet_has_nu_zero() {
        let b = second_basis(0, 1.0, 1.0).unwrap();
        assert_eq!(b.states.len(), 1);
        assert_eq!(b.states[0].nu, 0);
        assert!(b.states[0].r_numeric.abs() < 1e-10);
    }

    #[test]
    fn n4_r_spectrum() {
        let b = second_basis(4, 1.0, 1.0).unwrap();
        let got: Vec<f64> = b.states.iter().map(|s| s.r_numeric).collect();
        for (g, nu) in got.iter().zip([0u32, 2, 4]) {
            assert!((g - r_eigenvalue(nu, 1.0, 1.0)).abs() < 1e-9, "{got:?}");
        }
    }
}
