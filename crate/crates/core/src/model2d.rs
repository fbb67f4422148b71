//! The operators of the two-dimensional channel and their exact identities.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::coeffring::{k, q, sp, CoeffPoly, ScalarPoly};
use crate::diffalg::{anticommutator, commutator, DiffOp};
use crate::error::{Error, Result};

/// Every named operator of the planar model, with `q` and `k` symbolic.
#[derive(Clone, Debug)]
pub struct OperatorCatalog {
    pub h: DiffOp,
    pub l: DiffOp,
    pub r: DiffOp,
    pub rbar: DiffOp,
    pub eta: DiffOp,
    pub eta_dag: DiffOp,
    pub etabar: DiffOp,
    pub etabar_dag: DiffOp,
    pub c: DiffOp,
}

/// `s · sinh^a cosh^b sin^c cos^d`
fn m(a: i32, b: u32, c: u32, d: u32, s: ScalarPoly) -> CoeffPoly {
    CoeffPoly::mono(a, b, c, d).scale(&s)
}

fn op(terms: Vec<(u32, u32, CoeffPoly)>) -> DiffOp {
    let mut out = DiffOp::zero();
    for (i, j, f) in terms {
        out.add_assign_ref(&DiffOp::term(i, j, f));
    }
    out
}

fn q2() -> ScalarPoly {
    q() * q()
}

/// `H^{(k)} = -∂x cosh² ∂x - ∂y cosh² ∂y - q² cosh² + q² k(k-1) csch²`
pub fn hamiltonian() -> DiffOp {
    let c2 = DiffOp::mul_by(CoeffPoly::cosh(2));
    let kin_x = DiffOp::dx().compose(&c2).compose(&DiffOp::dx());
    let kin_y = DiffOp::dy().compose(&c2).compose(&DiffOp::dy());
    let v = m(0, 2, 0, 0, -q2()) + m(-2, 0, 0, 0, q2() * k() * (k() - sp(1)));
    -kin_x - kin_y + DiffOp::mul_by(v)
}

pub fn eta() -> DiffOp {
    op(vec![
        (1, 0, m(0, 1, 1, 0, sp(1))),
        (0, 1, m(1, 0, 0, 1, sp(-1))),
        (0, 0, m(1, 0, 1, 0, q()) + m(-1, 0, 1, 0, -(q() * k()))),
    ])
}

pub fn eta_dag() -> DiffOp {
    op(vec![
        (1, 0, m(0, 1, 1, 0, sp(-1))),
        (0, 1, m(1, 0, 0, 1, sp(1))),
        (0, 0, m(1, 0, 1, 0, -q()) + m(-1, 0, 1, 0, -(q() * k()))),
    ])
}

pub fn etabar() -> DiffOp {
    op(vec![
        (1, 0, m(0, 1, 0, 1, sp(1))),
        (0, 1, m(1, 0, 1, 0, sp(1))),
        (0, 0, m(1, 0, 0, 1, q()) + m(-1, 0, 0, 1, -(q() * k()))),
    ])
}

pub fn etabar_dag() -> DiffOp {
    op(vec![
        (1, 0, m(0, 1, 0, 1, sp(-1))),
        (0, 1, m(1, 0, 1, 0, sp(-1))),
        (0, 0, m(1, 0, 0, 1, -q()) + m(-1, 0, 0, 1, -(q() * k()))),
    ])
}

/// `R` in the expanded second-order form.
pub fn r_expanded() -> DiffOp {
    let q2k = q2() * k();
    let q2k2 = q2() * k() * k();
    op(vec![
        (2, 0, m(0, 2, 2, 0, sp(-1))),
        (1, 1, m(1, 1, 1, 1, sp(2))),
        (0, 2, m(2, 0, 0, 2, sp(-1))),
        (1, 0, m(1, 1, 0, 0, q()) + m(1, 1, 2, 0, q() * sp(-4))),
        (0, 1, m(0, 0, 1, 1, q()) + m(2, 0, 1, 1, q() * sp(4))),
        (
            0,
            0,
            m(2, 0, 0, 0, q2())
                + m(0, 0, 2, 0, -q2())
                + m(2, 0, 2, 0, q2() * sp(-3))
                + m(0, 0, 0, 0, -q2k.clone())
                + m(-2, 0, 2, 0, -q2k)
                + m(-2, 0, 2, 0, q2k2),
        ),
    ])
}

/// `R̄` in the expanded second-order form.
pub fn rbar_expanded() -> DiffOp {
    let q2k = q2() * k();
    let q2k2 = q2() * k() * k();
    op(vec![
        (2, 0, m(0, 2, 0, 2, sp(-1))),
        (1, 1, m(1, 1, 1, 1, sp(-2))),
        (0, 2, m(2, 0, 2, 0, sp(-1))),
        (1, 0, m(1, 1, 0, 0, q()) + m(1, 1, 0, 2, q() * sp(-4))),
        (0, 1, m(0, 0, 1, 1, -q()) + m(2, 0, 1, 1, q() * sp(-4))),
        (
            0,
            0,
            m(2, 0, 0, 0, q2())
                + m(0, 0, 0, 2, -q2())
                + m(2, 0, 0, 2, q2() * sp(-3))
                + m(0, 0, 0, 0, -q2k.clone())
                + m(-2, 0, 0, 2, -q2k)
                + m(-2, 0, 0, 2, q2k2),
        ),
    ])
}

/// The multiplication operator `csch qx sin qy`.
pub fn xi() -> CoeffPoly {
    CoeffPoly::mono(-1, 0, 1, 0)
}

/// The multiplication operator `csch qx cos qy`.
pub fn xibar() -> CoeffPoly {
    CoeffPoly::mono(-1, 0, 0, 1)
}

impl OperatorCatalog {
    pub fn build() -> Self {
        let eta = eta();
        let eta_dag = eta_dag();
        let etabar = etabar();
        let etabar_dag = etabar_dag();
        let r = eta_dag.compose(&eta);
        let rbar = etabar_dag.compose(&etabar);
        let mixed = eta_dag.compose(&etabar) + etabar_dag.compose(&eta);
        let c = anticommutator(&DiffOp::dy(), &mixed).scale(&q());
        OperatorCatalog {
            h: hamiltonian(),
            l: -DiffOp::dy().pow(2),
            r,
            rbar,
            eta,
            eta_dag,
            etabar,
            etabar_dag,
            c,
        }
    }
}

/// The catalog, built once per process.
pub fn catalog() -> &'static OperatorCatalog {
    static CATALOG: OnceLock<OperatorCatalog> = OnceLock::new();
    CATALOG.get_or_init(OperatorCatalog::build)
}

pub fn build_catalog() -> OperatorCatalog {
    OperatorCatalog::build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    HCommutesL,
    HCommutesR,
    HCommutesRbar,
    IntertwineEta,
    IntertwineEtabar,
    SumRule,
    DyEta,
    DyEtabar,
    EtaEtabar,
    EtaEtaDag,
    EtabarEtabarDag,
    EtaEtabarDag,
    CommutatorRL,
    RExpanded,
    RbarExpanded,
    EtaDagAdjoint,
    EtabarDagAdjoint,
}

impl IdentityId {
    pub const ALL: [IdentityId; 17] = [
        IdentityId::HCommutesL,
        IdentityId::HCommutesR,
        IdentityId::HCommutesRbar,
        IdentityId::IntertwineEta,
        IdentityId::IntertwineEtabar,
        IdentityId::SumRule,
        IdentityId::DyEta,
        IdentityId::DyEtabar,
        IdentityId::EtaEtabar,
        IdentityId::EtaEtaDag,
        IdentityId::EtabarEtabarDag,
        IdentityId::EtaEtabarDag,
        IdentityId::CommutatorRL,
        IdentityId::RExpanded,
        IdentityId::RbarExpanded,
        IdentityId::EtaDagAdjoint,
        IdentityId::EtabarDagAdjoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::HCommutesL => "comm-h-l",
            IdentityId::HCommutesR => "comm-h-r",
            IdentityId::HCommutesRbar => "comm-h-rbar",
            IdentityId::IntertwineEta => "intertwine-eta",
            IdentityId::IntertwineEtabar => "intertwine-etabar",
            IdentityId::SumRule => "sum-rule",
            IdentityId::DyEta => "comm-dy-eta",
            IdentityId::DyEtabar => "comm-dy-etabar",
            IdentityId::EtaEtabar => "comm-eta-etabar",
            IdentityId::EtaEtaDag => "comm-eta-eta-dag",
            IdentityId::EtabarEtabarDag => "comm-etabar-etabar-dag",
            IdentityId::EtaEtabarDag => "comm-eta-etabar-dag",
            IdentityId::CommutatorRL => "c-equals-comm-r-l",
            IdentityId::RExpanded => "r-expanded",
            IdentityId::RbarExpanded => "rbar-expanded",
            IdentityId::EtaDagAdjoint => "eta-dag-adjoint",
            IdentityId::EtabarDagAdjoint => "etabar-dag-adjoint",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub holds: bool,
    pub residual: DiffOp,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySummary {
    pub id: String,
    pub holds: bool,
    pub residual_term_count: usize,
}

impl IdentityReport {
    pub fn summary(&self) -> IdentitySummary {
        IdentitySummary {
            id: self.id.to_string(),
            holds: self.holds,
            residual_term_count: self.residual.term_count(),
        }
    }
}

/// LHS and RHS of an identity; it holds iff they are structurally equal.
pub fn identity_sides(cat: &OperatorCatalog, id: IdentityId) -> (DiffOp, DiffOp) {
    let dy = DiffOp::dy();
    let two_q2k = q2() * k() * sp(2);
    let h1 = cat.h.shift_k_op(1) + DiffOp::scalar(two_q2k.clone());
    let q_op = |d: &DiffOp| d.scale(&q());
    match id {
        IdentityId::HCommutesL => (commutator(&cat.h, &cat.l), DiffOp::zero()),
        IdentityId::HCommutesR => (commutator(&cat.h, &cat.r), DiffOp::zero()),
        IdentityId::HCommutesRbar => (commutator(&cat.h, &cat.rbar), DiffOp::zero()),
        IdentityId::IntertwineEta => (cat.eta.compose(&cat.h), h1.compose(&cat.eta)),
        IdentityId::IntertwineEtabar => (cat.etabar.compose(&cat.h), h1.compose(&cat.etabar)),
        IdentityId::SumRule => (
            cat.h.clone(),
            &(&(&cat.l + &cat.r) + &cat.rbar) + &DiffOp::scalar(two_q2k),
        ),
        IdentityId::DyEta => (commutator(&dy, &cat.eta), q_op(&cat.etabar)),
        IdentityId::DyEtabar => (commutator(&dy, &cat.etabar), -q_op(&cat.eta)),
        IdentityId::EtaEtabar => (commutator(&cat.eta, &cat.etabar), q_op(&dy)),
        IdentityId::EtaEtaDag => (
            commutator(&cat.eta, &cat.eta_dag),
            DiffOp::mul_by((CoeffPoly::one() + xi().pow(2)).scale(&(q2() * k() * sp(2)))),
        ),
        IdentityId::EtabarEtabarDag => (
            commutator(&cat.etabar, &cat.etabar_dag),
            DiffOp::mul_by((CoeffPoly::one() + xibar().pow(2)).scale(&(q2() * k() * sp(2)))),
        ),
        IdentityId::EtaEtabarDag => (
            commutator(&cat.eta, &cat.etabar_dag),
            -q_op(&dy) + DiffOp::mul_by((xi() * xibar()).scale(&(q2() * k() * sp(2)))),
        ),
        IdentityId::CommutatorRL => (cat.c.clone(), commutator(&cat.r, &cat.l)),
        IdentityId::RExpanded => (cat.r.clone(), r_expanded()),
        IdentityId::RbarExpanded => (cat.rbar.clone(), rbar_expanded()),
        IdentityId::EtaDagAdjoint => (cat.eta_dag.clone(), cat.eta.adjoint()),
        IdentityId::EtabarDagAdjoint => (cat.etabar_dag.clone(), cat.etabar.adjoint()),
    }
}

pub fn verify_identity_in(cat: &OperatorCatalog, id: IdentityId) -> IdentityReport {
    let (lhs, rhs) = identity_sides(cat, id);
    let residual = lhs - rhs;
    IdentityReport {
        id,
        holds: residual.is_zero(),
        residual,
    }
}

/// Checks a named identity against the shared catalog.
pub fn verify_identity(name: &str) -> Result<IdentityReport> {
    let id: IdentityId = name.parse()?;
    Ok(verify_identity_in(catalog(), id))
}

pub fn verify_all(cat: &OperatorCatalog) -> Vec<IdentityReport> {
    IdentityId::ALL
        .iter()
        .map(|id| verify_identity_in(cat, *id))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::MonoKey;

    #[test]
    fn h_second_x_derivative_coefficient() {
        let h = hamiltonian();
        let expected = -(CoeffPoly::one() + CoeffPoly::sinh(2));
        assert_eq!(h.coeff(2, 0), expected);
    }

    #[test]
    fn l_is_single_term() {
        let c = catalog();
        assert_eq!(c.l.term_count(), 1);
        assert_eq!(c.l.coeff(0, 2), CoeffPoly::int(-1));
    }

    #[test]
    fn c_is_third_order() {
        let c = catalog();
        assert_eq!(c.c.order(), 3);
        assert!(!c.c.coeff(0, 3).is_zero());
    }

    #[test]
    fn shifted_h_has_shifted_barrier() {
        let h1 = hamiltonian().shift_k_op(1);
        let key = MonoKey {
            a: -2,
            b: 0,
            c: 0,
            d: 0,
        };
        assert_eq!(h1.coeff(0, 0).coeff(&key), q2() * (k() + sp(1)) * k());
    }

    #[test]
    fn identities_parse_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!(matches!(
            verify_identity("no-such-thing"),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn every_identity_holds() {
        for r in verify_all(catalog()) {
            assert!(r.holds, "{} residual:\n{}", r.id, r.residual.to_text());
        }
    }

    #[test]
    fn l_and_r_do_not_commute() {
        let c = catalog();
        assert!(!commutator(&c.r, &c.l).is_zero());
    }
}
