//! Matrix elements of `L` in the basis where `H` and `R` are diagonal.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::coeffring::{qk, rat, rat_from_f64, rat_to_f64, Rat, ScalarPoly};
use crate::error::{Error, Result};
use crate::model2d::catalog;
use crate::wavefn::{operator_matrix, second_basis, StripQuadrature, DEFAULT_STRIP_NODES};

use super::ratfunc::{k_plus, kpoly_c, kpoly_k, KPoly, RatFunc};

fn check_nu(n_total: u32, nu: u32) -> Result<()> {
    if nu > n_total || nu % 2 != n_total % 2 {
        return Err(Error::InvalidParam(format!(
            "ν = {nu} is not a label of level N = {n_total}"
        )));
    }
    Ok(())
}

fn check_kq(k: f64, q: f64) -> Result<()> {
    if !(k > 0.0) || !(q > 0.0) || !k.is_finite() || !q.is_finite() {
        return Err(Error::InvalidParam(format!("need k > 0 and q > 0, got k={k}, q={q}")));
    }
    Ok(())
}

fn int(n: i64) -> KPoly {
    kpoly_c(rat(n, 1))
}

/// `(ν + c + m·k)` as a polynomial in `k`.
fn lin(nu: u32, c: i64, m: i64) -> KPoly {
    &int(nu as i64 + c) + &kpoly_k().scale(&rat(m, 1))
}

/// `Φ_ν = 3·2³⁰ q²⁰ ν(ν−1)(ν+2k−1)(ν+2k−2)(N+ν+2k)(N+ν+2k+1)(N−ν+2)(N−ν+3)`
pub fn phi_nu_poly(n_total: u32, nu: u32) -> Result<ScalarPoly> {
    check_nu(n_total, nu)?;
    let n = n_total as i64;
    let v = nu as i64;
    let c = |a: i64| qk(rat(a, 1), 0, 0);
    let two_k = qk(rat(2, 1), 0, 1);
    let factors = [
        c(v),
        c(v - 1),
        &c(v - 1) + &two_k,
        &c(v - 2) + &two_k,
        &c(n + v) + &two_k,
        &c(n + v + 1) + &two_k,
        c(n - v + 2),
        c(n - v + 3),
    ];
    let pref = qk(rat(3, 1) * Rat::from_integer((1u64 << 30).into()), 20, 0);
    Ok(factors.iter().fold(pref, |acc, f| &acc * f))
}

pub fn phi_nu(n_total: u32, nu: u32, k: f64, q: f64) -> Result<f64> {
    check_kq(k, q)?;
    Ok(phi_nu_poly(n_total, nu)?.eval_f64(&[q, k]))
}

/// `σ_ν / q²` as a reduced rational function of `k`.
pub fn sigma_nu_exact(n_total: u32, nu: u32) -> Result<RatFunc> {
    check_nu(n_total, nu)?;
    let n = n_total as i64;
    let a = lin(nu, -1, 1);
    let b = lin(nu, 1, 1);
    let ab = &a * &b;
    let k = kpoly_k();
    // N² + (2k+3)N + 2k² + 2k + 1
    let bracket = &(&int(n * n + 3 * n + 1) + &k.scale(&rat(2 * n + 2, 1))) + &(&k * &k).scale(&rat(2, 1));
    let last = &(&(&k * &k_plus(-1)) * &k_plus(n + 1)) * &k_plus(n + 2);
    let num = &(&(&bracket * &ab) - &(&ab * &ab)) - &last;
    Ok(RatFunc::new(num, ab.scale(&rat(2, 1))))
}

fn eval_exact(f: &RatFunc, k: f64) -> Option<f64> {
    let kr = rat_from_f64(k)?;
    f.eval_rat(&kr).map(|v| rat_to_f64(&v))
}

/// `σ_ν`; a zero of `(ν+k−1)(ν+k+1)` is resolved by exact cancellation.
pub fn sigma_nu(n_total: u32, nu: u32, k: f64, q: f64) -> Result<f64> {
    check_kq(k, q)?;
    let f = sigma_nu_exact(n_total, nu)?;
    let v = eval_exact(&f, k).ok_or(Error::PoleInSigma { nu, k })?;
    Ok(v * q * q)
}

/// `τ_ν² / q⁴ = Π / (16(ν+k−2)(ν+k−1)²(ν+k))` with `Π` the eight factors of
/// `Φ_ν` without the prefactor.
pub fn tau_sq_nu_exact(n_total: u32, nu: u32) -> Result<RatFunc> {
    check_nu(n_total, nu)?;
    let n = n_total as i64;
    let factors = [
        int(nu as i64),
        int(nu as i64 - 1),
        lin(nu, -1, 2),
        lin(nu, -2, 2),
        lin(nu, n, 2),
        lin(nu, n + 1, 2),
        int(n - nu as i64 + 2),
        int(n - nu as i64 + 3),
    ];
    let num = factors.iter().fold(KPoly::one(), |acc, f| &acc * f);
    let m1 = lin(nu, -1, 1);
    let den = [lin(nu, -2, 1), &m1 * &m1, lin(nu, 0, 1)]
        .iter()
        .fold(int(16), |acc, f| &acc * f);
    Ok(RatFunc::new(num, den))
}

pub fn tau_sq_nu(n_total: u32, nu: u32, k: f64, q: f64) -> Result<f64> {
    check_kq(k, q)?;
    let f = tau_sq_nu_exact(n_total, nu)?;
    let v = eval_exact(&f, k).ok_or_else(|| Error::InvalidParam(format!("τ² has a pole at k = {k}")))?;
    Ok(v * q.powi(4))
}

#[derive(Clone, Debug, Serialize)]
pub struct LMatrixBlock {
    #[serde(rename = "N")]
    pub n_total: u32,
    pub k: f64,
    pub q: f64,
    /// Row and column labels, increasing.
    pub nus: Vec<u32>,
    pub sigma: Vec<f64>,
    /// `|τ_ν|` for `ν = nus[1..]`, coupling `ν−2` and `ν`.
    pub tau: Vec<f64>,
    /// `s_ν` for the same labels as `tau`.
    pub phases: Vec<i32>,
}

impl LMatrixBlock {
    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.nus.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.sigma[i];
            if i > 0 {
                let t = self.phases[i - 1] as f64 * self.tau[i - 1];
                m[(i - 1, i)] = t;
                m[(i, i - 1)] = t;
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        self.sigma.iter().sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// `q²(l+1)²` for `l = N, N−2, ...`, increasing.
pub fn l_spectrum(n_total: u32, q: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..=n_total / 2)
        .map(|n| {
            let l = (n_total - 2 * n) as f64;
            q * q * (l + 1.0).powi(2)
        })
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

/// The analytic block with all phases taken as `+1`.
pub fn l_matrix(n_total: u32, k: f64, q: f64) -> Result<LMatrixBlock> {
    check_kq(k, q)?;
    let nus: Vec<u32> = (0..=n_total / 2).map(|i| n_total % 2 + 2 * i).collect();
    let sigma = nus
        .iter()
        .map(|&nu| sigma_nu(n_total, nu, k, q))
        .collect::<Result<Vec<_>>>()?;
    let tau = nus[1..]
        .iter()
        .map(|&nu| Ok(tau_sq_nu(n_total, nu, k, q)?.sqrt()))
        .collect::<Result<Vec<_>>>()?;
    let phases = vec![1; tau.len()];
    Ok(LMatrixBlock {
        n_total,
        k,
        q,
        nus,
        sigma,
        tau,
        phases,
    })
}

pub const L_MATRIX_REL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct LMatrixReport {
    pub analytic: LMatrixBlock,
    /// `⟨Ψ_{N,N−ν'}, L Ψ_{N,N−ν}⟩` by quadrature.
    #[serde(skip)]
    pub numeric: DMatrix<f64>,
    pub max_rel_err: f64,
    pub trace: f64,
    pub trace_expected: f64,
    pub eigenvalues: Vec<f64>,
    pub eigenvalues_expected: Vec<f64>,
}

/// Compare the analytic block with quadrature in the numerically built
/// `Ψ_{N,N−ν}` basis. Magnitudes must agree; the observed off-diagonal
/// signs are returned as the phases of this basis.
pub fn verify_l_matrix(n_total: u32, k: f64, q: f64) -> Result<LMatrixReport> {
    let mut block = l_matrix(n_total, k, q)?;
    let sb = second_basis(n_total, k, q)?;
    let quad = StripQuadrature::new(q, DEFAULT_STRIP_NODES)?;
    let l_op = catalog().l.numeric(q, k);
    let raw = operator_matrix(&sb.psi, Some(&l_op), &quad)?;
    let sym = (&raw + raw.transpose()) * 0.5;
    let numeric = sb.transform(&sym);
    let analytic = block.matrix();
    let scale = analytic.amax().max(f64::MIN_POSITIVE);
    let dim = block.nus.len();
    let mut max_rel_err: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let num = numeric[(i, j)];
            let ana = analytic[(i, j)];
            let (err, denom) = if i == j {
                ((num - ana).abs(), ana.abs().max(scale * f64::EPSILON))
            } else if i.abs_diff(j) == 1 {
                ((num.abs() - ana.abs()).abs(), ana.abs().max(scale * f64::EPSILON))
            } else {
                (num.abs(), scale)
            };
            let rel = err / denom;
            max_rel_err = max_rel_err.max(rel);
            if rel > L_MATRIX_REL_TOL {
                return Err(Error::PhaseMismatch {
                    row: block.nus[i],
                    col: block.nus[j],
                    numeric: num,
                    analytic: ana,
                });
            }
        }
    }
    block.phases = (1..dim)
        .map(|i| if numeric[(i - 1, i)] < 0.0 { -1 } else { 1 })
        .collect();
    let eigenvalues = block.eigenvalues();
    let eigenvalues_expected = l_spectrum(n_total, q);
    let trace_expected = eigenvalues_expected.iter().sum();
    Ok(LMatrixReport {
        trace: block.trace(),
        analytic: block,
        numeric,
        max_rel_err,
        trace_expected,
        eigenvalues,
        eigenvalues_expected,
    })
}
