//! Finite-dimensional parafermionic representations and the choice of the
//! physical branch.

use std::fmt;

use nalgebra::DMatrix;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::coeffring::{qk, rat, rat_to_f64, Poly, Rat, ScalarPoly};
use crate::error::{Error, Result};

use super::constants::StructureConstants;
use super::ratfunc::{KPoly, RatFunc};
use super::structure::{a_general, lift_h, lift_scalar, mconst, mvar, phi_factorized, MPoly, VE, VK, VQ, VU, VX};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum UChoice {
    /// `u = k/2`
    HalfK,
    /// `u = (k+1)/2`
    HalfKPlusHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BranchSign {
    Upper,
    Lower,
}

impl fmt::Display for UChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UChoice::HalfK => "k/2",
            UChoice::HalfKPlusHalf => "(k+1)/2",
        })
    }
}

impl UChoice {
    pub fn as_mpoly(self) -> MPoly {
        let half_k = mvar(VK).scale(&rat(1, 2));
        match self {
            UChoice::HalfK => half_k,
            UChoice::HalfKPlusHalf => &half_k + &mconst(1, 2),
        }
    }

    /// Parity of `ν = 2m + parity`.
    pub fn parity(self) -> u32 {
        match self {
            UChoice::HalfK => 0,
            UChoice::HalfKPlusHalf => 1,
        }
    }

    /// Level `N` fed by order `p`.
    pub fn level(self, p: u32) -> u32 {
        2 * p + self.parity()
    }
}

impl BranchSign {
    fn pm(self) -> Rat {
        match self {
            BranchSign::Upper => rat(1, 2),
            BranchSign::Lower => rat(-1, 2),
        }
    }
}

/// Sample values of `k` used for sign conditions.
pub const SIGN_SAMPLES: [(i64, i64); 5] = [(1, 4), (1, 2), (1, 1), (2, 1), (5, 1)];

/// `E` of the branch: `q²(2p + 3/2 ± 1/2)(2p + 2k + 1/2 ± 1/2)` for
/// `u = k/2`, shifted by one in both factors for `u = (k+1)/2`.
pub fn branch_energy(p: u32, u: UChoice, sign: BranchSign) -> ScalarPoly {
    let shift = Rat::from_integer(u.parity().into());
    let two_p = Rat::from_integer((2 * p).into());
    let f1 = &two_p + &rat(3, 2) + &shift + sign.pm();
    let f2 = &two_p + &rat(1, 2) + &shift + sign.pm();
    let first = qk(f1, 0, 0);
    let second = &qk(f2, 0, 0) + &qk(rat(2, 1), 0, 1);
    &(&first * &second) * &qk(rat(1, 1), 2, 0)
}

/// `E_N = q²(N+2)(N+2k+1)`
pub fn level_energy(n_total: u32) -> ScalarPoly {
    let n = n_total as i64;
    let f1 = qk(rat(n + 2, 1), 2, 0);
    let f2 = &qk(rat(n + 1, 1), 0, 0) + &qk(rat(2, 1), 0, 1);
    &f1 * &f2
}

/// `r_ν = q² ν(ν+2k)`
pub fn r_level(nu: u32) -> ScalarPoly {
    let n = nu as i64;
    &qk(rat(n * n, 1), 2, 0) + &qk(rat(2 * n, 1), 2, 1)
}

/// Branch energy with `p` eliminated through `2p = N − parity`, as a
/// polynomial in `(q, k, N)`.
pub fn branch_energy_in_n(u: UChoice, sign: BranchSign) -> Poly<3> {
    let c = |r: Rat| Poly::<3>::constant(r);
    let k = Poly::<3>::var(1);
    let two_p = &Poly::<3>::var(2) - &Poly::from_int(u.parity() as i64);
    let shift = c(Rat::from_integer(u.parity().into()));
    let f1 = &(&(&two_p + &c(rat(3, 2))) + &shift) + &c(sign.pm());
    let f2 = &(&(&(&two_p + &k.scale(&rat(2, 1))) + &c(rat(1, 2))) + &shift) + &c(sign.pm());
    &(&Poly::<3>::var(0).pow(2) * &f1) * &f2
}

/// `q²(N+2)(N+2k+1)` over `(q, k, N)`.
pub fn level_energy_in_n() -> Poly<3> {
    let n = Poly::<3>::var(2);
    let k = Poly::<3>::var(1);
    let f1 = &n + &Poly::from_int(2);
    let f2 = &(&n + &k.scale(&rat(2, 1))) + &Poly::from_int(1);
    &(&Poly::<3>::var(0).pow(2) * &f1) * &f2
}

fn substitute_branch(p: &MPoly, x: &MPoly, u: UChoice, e: &ScalarPoly) -> MPoly {
    p.substitute(VX, x).substitute(VU, &u.as_mpoly()).substitute(VE, &lift_scalar(e))
}

fn to_scalar(p: &MPoly) -> ScalarPoly {
    super::structure::lower_scalar(p).expect("only q and k remain")
}

/// Polynomial in `k` after setting `q = 1`.
fn to_kpoly(p: &MPoly) -> KPoly {
    let p1 = p.substitute(VQ, &MPoly::one());
    KPoly::from_terms(p1.terms().map(|(e, c)| {
        assert!(e[VX] == 0 && e[VU] == 0 && e[VE] == 0 && e[VQ] == 0, "stray variable");
        ([e[VK]], c.clone())
    }))
}

#[derive(Clone, Debug)]
pub struct ParafermionRep {
    pub p: u32,
    pub u: UChoice,
    pub sign: BranchSign,
    pub energy: ScalarPoly,
    /// `Φ(m)` for `m = 0..=p+1`.
    pub phi: Vec<ScalarPoly>,
    /// `A(m)` for `m = 0..=p`.
    pub a: Vec<ScalarPoly>,
    /// `Φ(x)` with `u` and `E` substituted; variables `x`, `k`, `q`.
    pub phi_x: MPoly,
}

/// The order-`p` representation for a choice of `u` and sign.
pub fn representation(p: u32, u: UChoice, sign: BranchSign) -> Result<ParafermionRep> {
    let energy = branch_energy(p, u, sign);
    let phi_x = phi_factorized()
        .substitute(VU, &u.as_mpoly())
        .substitute(VE, &lift_scalar(&energy));
    let at = |m: u32| to_scalar(&phi_x.substitute(VX, &mconst(m as i64, 1)));
    let phi: Vec<ScalarPoly> = (0..=p + 1).map(at).collect();
    let a_x = a_general().substitute(VU, &u.as_mpoly());
    let a: Vec<ScalarPoly> = (0..=p)
        .map(|m| to_scalar(&a_x.substitute(VX, &mconst(m as i64, 1))))
        .collect();
    let label = format!("p={p}, u={u}, {sign:?}");
    if !phi[0].is_zero() {
        return Err(Error::InvalidBranch(format!("{label}: Φ(0) ≠ 0")));
    }
    if !phi[p as usize + 1].is_zero() {
        return Err(Error::InvalidBranch(format!("{label}: Φ(p+1) ≠ 0")));
    }
    let one = Rat::one();
    for (n, d) in SIGN_SAMPLES {
        let kv = rat(n, d);
        for m in 1..=p as usize {
            if !phi[m].eval_rat(&[one.clone(), kv.clone()]).is_positive() {
                return Err(Error::InvalidBranch(format!("{label}: Φ({m}) ≤ 0 at k = {kv}")));
            }
        }
        for (m, am) in a.iter().enumerate() {
            if am.eval_rat(&[one.clone(), kv.clone()]).is_negative() {
                return Err(Error::InvalidBranch(format!("{label}: A({m}) < 0 at k = {kv}")));
            }
        }
    }
    Ok(ParafermionRep {
        p,
        u,
        sign,
        energy,
        phi,
        a,
        phi_x,
    })
}

/// The product forms quoted for `Φ(x)` on each branch, over `(x, k, q)`.
pub fn phi_printed(p: u32, u: UChoice, sign: BranchSign) -> MPoly {
    let x = mvar(VX);
    let k = mvar(VK);
    let pp = mconst(p as i64, 1);
    let pm = MPoly::constant(sign.pm());
    let quarter = MPoly::constant(sign.pm() * rat(1, 2));
    let pref = MPoly::monomial([0, 0, 0, 20, 0], rat(3, 1) * Rat::from_integer((1u64 << 38).into()));
    let xk = &x + &k;
    let xpk = &xk + &pp;
    let factors = match u {
        UChoice::HalfK => vec![
            x.clone(),
            &(&pp + &mconst(1, 1)) - &x,
            &x - &mconst(1, 2),
            &(&(&pp + &mconst(1, 1)) + &pm) - &x,
            &xk - &mconst(1, 2),
            &xk - &mconst(1, 1),
            &(&xpk + &mconst(1, 4)) + &quarter,
            &(&xpk - &mconst(1, 4)) + &quarter,
        ],
        UChoice::HalfKPlusHalf => vec![
            x.clone(),
            &(&pp + &mconst(1, 1)) - &x,
            &x + &mconst(1, 2),
            &(&(&pp + &mconst(1, 1)) + &pm) - &x,
            xk.clone(),
            &xk - &mconst(1, 2),
            &(&xpk + &mconst(5, 4)) + &quarter,
            &(&xpk + &mconst(3, 4)) + &quarter,
        ],
    };
    factors.iter().fold(pref, |acc, f| &acc * f)
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchVerdict {
    pub sign: BranchSign,
    /// `E / q²` rendered.
    pub energy: String,
    /// The level whose energy coincides with the branch energy, if any.
    pub matching_level: Option<u32>,
    pub degeneracy_ok: bool,
    pub r_spectrum_ok: bool,
    pub physical: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhysicalSelection {
    #[serde(rename = "N")]
    pub n_total: u32,
    #[serde(skip)]
    pub energy: ScalarPoly,
    pub verdicts: Vec<BranchVerdict>,
}

fn judge(rep: &ParafermionRep) -> BranchVerdict {
    let top = 2 * rep.p + 2;
    let matching_level = (0..=top).find(|&n| level_energy(n) == rep.energy);
    let (degeneracy_ok, r_spectrum_ok) = match matching_level {
        None => (false, false),
        Some(n) => {
            let deg = n / 2 + 1;
            let mut expected: Vec<ScalarPoly> = (0..=n).filter(|nu| nu % 2 == n % 2).map(r_level).collect();
            let mut got = rep.a.clone();
            expected.sort_by_key(|p| format!("{p:?}"));
            got.sort_by_key(|p| format!("{p:?}"));
            (deg == rep.p + 1, expected == got)
        }
    };
    BranchVerdict {
        sign: rep.sign,
        energy: format!("{:?}", rep.energy),
        matching_level,
        degeneracy_ok,
        r_spectrum_ok,
        physical: degeneracy_ok && r_spectrum_ok,
    }
}

/// Build both sign branches and keep the one that reproduces an actual
/// level: its energy must equal some `E_N`, the level must have `p+1`
/// states and `A(m)` must list the eigenvalues of `R` on that level.
pub fn select_physical(p: u32, u: UChoice) -> Result<PhysicalSelection> {
    let mut verdicts = Vec::new();
    let mut chosen = None;
    for sign in [BranchSign::Upper, BranchSign::Lower] {
        let rep = representation(p, u, sign)?;
        let v = judge(&rep);
        if v.physical && chosen.is_none() {
            chosen = Some((v.matching_level.expect("physical implies a level"), rep.energy.clone()));
        }
        verdicts.push(v);
    }
    let (n_total, energy) =
        chosen.ok_or_else(|| Error::InvalidBranch(format!("no physical branch for p={p}, u={u}")))?;
    Ok(PhysicalSelection {
        n_total,
        energy,
        verdicts,
    })
}

/// The realization functions on a branch as exact rational functions of `k`
/// (with `q = 1`; `σ` scales as `q²`, the squared off-diagonal as `q⁴`).
#[derive(Clone, Debug)]
pub struct Realization {
    pub rep: ParafermionRep,
    pub a: Vec<RatFunc>,
    pub sigma: Vec<RatFunc>,
    /// `ρ(m)² Φ(m+1)` for `m = 0..p`.
    pub offdiag_sq: Vec<RatFunc>,
}

/// `σ(s)` of the realization as numerator and denominator over `(x,u,k,q,E)`.
fn sigma_parts(c: &StructureConstants) -> (MPoly, MPoly) {
    let al = lift_scalar(&c.alpha);
    let ga = lift_scalar(&c.gamma);
    let de = lift_h(&c.delta());
    let ep = lift_h(&c.epsilon());
    let ze = lift_h(&c.zeta());
    let s = &mvar(VX) + &mvar(VU);
    let w = &s.pow(2) - &mconst(1, 4);
    let g2 = ga.pow(2);
    let g4 = ga.pow(4);
    let t1 = &(&(&al * &g4) * &w.pow(2)) * &mconst(-1, 1);
    let t2 = &(&(&mconst(2, 1) * &g2) * &(&(&al * &ep) - &(&ga * &de))) * &w;
    let t3 = &(&(&al * &ep.pow(2)) - &(&(&(&mconst(2, 1) * &ga) * &de) * &ep)) + &(&(&mconst(4, 1) * &g2) * &ze);
    let num = &(&t1 + &t2) - &t3;
    let den = &(&mconst(4, 1) * &g4) * &w;
    (num, den)
}

/// `1/ρ(s)² = 3·2¹² γ⁸ s(s+1)(2s+1)²`
fn inv_rho_sq(c: &StructureConstants) -> MPoly {
    let ga = lift_scalar(&c.gamma);
    let s = &mvar(VX) + &mvar(VU);
    let pref = mconst(3 * 4096, 1);
    let two_s1 = &s.scale(&rat(2, 1)) + &mconst(1, 1);
    &(&(&(&pref * &ga.pow(8)) * &s) * &(&s + &mconst(1, 1))) * &two_s1.pow(2)
}

pub fn realization(c: &StructureConstants, p: u32, u: UChoice, sign: BranchSign) -> Result<Realization> {
    let rep = representation(p, u, sign)?;
    let (sn, sd) = sigma_parts(c);
    let irho = inv_rho_sq(c);
    let phi = phi_factorized();
    let mut a = Vec::new();
    let mut sigma = Vec::new();
    let mut offdiag_sq = Vec::new();
    for m in 0..=p {
        let x = mconst(m as i64, 1);
        a.push(RatFunc::poly(to_kpoly(&lift_scalar(&rep.a[m as usize]))));
        let num = to_kpoly(&substitute_branch(&sn, &x, u, &rep.energy));
        let den = to_kpoly(&substitute_branch(&sd, &x, u, &rep.energy));
        if den.is_zero() {
            return Err(Error::InvalidBranch(format!("σ({m}) has an identically zero denominator")));
        }
        sigma.push(RatFunc::new(num, den));
        if m < p {
            let x1 = mconst(m as i64 + 1, 1);
            let num = to_kpoly(&substitute_branch(&phi, &x1, u, &rep.energy));
            let den = to_kpoly(&substitute_branch(&irho, &x, u, &rep.energy));
            offdiag_sq.push(RatFunc::new(num, den));
        }
    }
    Ok(Realization {
        rep,
        a,
        sigma,
        offdiag_sq,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationCheck {
    pub p: u32,
    pub k: f64,
    pub q: f64,
    pub residual_c2: f64,
    pub residual_c3: f64,
}

impl RealizationCheck {
    pub fn max_residual(&self) -> f64 {
        self.residual_c2.max(self.residual_c3)
    }
}

fn eval_rf(f: &RatFunc, k: f64, what: &str) -> Result<f64> {
    if let Some(r) = crate::coeffring::rat_from_f64(k) {
        if let Some(v) = f.eval_rat(&r) {
            return Ok(rat_to_f64(&v));
        }
    }
    f.eval(k)
        .ok_or_else(|| Error::InvalidBranch(format!("{what} has a pole at k = {k}")))
}

fn rel_residual(lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) -> f64 {
    let scale = lhs.amax().max(rhs.amax()).max(1.0);
    (lhs - rhs).amax() / scale
}

/// Build `A = diag A(m)` and the tridiagonal `B` on the branch at `(k, q)`
/// and measure how well they satisfy the relations for `[A,C]` and `[B,C]`,
/// with `C = [A,B]`.
pub fn check_realization(
    c: &StructureConstants,
    p: u32,
    u: UChoice,
    sign: BranchSign,
    k: f64,
    q: f64,
) -> Result<RealizationCheck> {
    let re = realization(c, p, u, sign)?;
    let n = p as usize + 1;
    let q2 = q * q;
    let mut am = DMatrix::zeros(n, n);
    let mut bm = DMatrix::zeros(n, n);
    for m in 0..n {
        am[(m, m)] = eval_rf(&re.a[m], k, "A")? * q2;
        bm[(m, m)] = eval_rf(&re.sigma[m], k, "σ")? * q2;
        if m + 1 < n {
            let sq = eval_rf(&re.offdiag_sq[m], k, "ρ²Φ")?;
            if sq < 0.0 {
                return Err(Error::InvalidBranch(format!("negative ρ²Φ at m={m}")));
            }
            let v = sq.sqrt() * q2;
            bm[(m + 1, m)] = v;
            bm[(m, m + 1)] = v;
        }
    }
    let e = re.rep.energy.eval_f64(&[q, k]);
    let ev = |p: &ScalarPoly| p.eval_f64(&[q, k]);
    let h = |p: super::constants::HPoly| p.eval(q, k, e);
    let id = DMatrix::<f64>::identity(n, n);
    let cm = &am * &bm - &bm * &am;
    let (al, ga, a) = (ev(&c.alpha), ev(&c.gamma), ev(&c.a));
    let (de, ep, ze, d, z) = (h(c.delta()), h(c.epsilon()), h(c.zeta()), h(c.d()), h(c.z()));
    let a2 = &am * &am;
    let b2 = &bm * &bm;
    let ab = &am * &bm + &bm * &am;
    let rhs2 = &a2 * al + &ab * ga + &am * de + &bm * ep + &id * ze;
    let rhs3 = &a2 * a - &b2 * ga - &ab * al + &am * d - &bm * de + &id * z;
    let lhs2 = &am * &cm - &cm * &am;
    let lhs3 = &bm * &cm - &cm * &bm;
    Ok(RealizationCheck {
        p,
        k,
        q,
        residual_c2: rel_residual(&lhs2, &rhs2),
        residual_c3: rel_residual(&lhs3, &rhs3),
    })
}
