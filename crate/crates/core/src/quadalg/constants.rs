//! Structure constants of the quadratic algebra generated by `A = R`, `B = L`.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeffring::{qk, rat, render_scalar, MonoKey, Poly, Rat, ScalarPoly};
use crate::diffalg::{anticommutator, commutator, DiffOp};
use crate::error::{Error, Result};
use crate::model2d::OperatorCatalog;

/// Polynomial in `H` with coefficients in `Q[q, k]`, lowest power first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HPoly(pub Vec<ScalarPoly>);

impl HPoly {
    pub fn constant(c: ScalarPoly) -> Self {
        HPoly(vec![c]).trimmed()
    }

    pub fn from_coeffs(c: Vec<ScalarPoly>) -> Self {
        HPoly(c).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn coeff(&self, i: usize) -> ScalarPoly {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&self, s: &ScalarPoly) -> Self {
        HPoly(self.0.iter().map(|c| c * s).collect()).trimmed()
    }

    /// `Σ c_i E^i` with `E` itself a polynomial in `q, k`.
    pub fn at(&self, e: &ScalarPoly) -> ScalarPoly {
        let mut acc = ScalarPoly::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * e) + c;
        }
        acc
    }

    pub fn eval(&self, q: f64, k: f64, e: f64) -> f64 {
        self.0
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * e + c.eval_f64(&[q, k]))
    }

    /// The operator `Σ c_i H^i ∘ op`, given `powers[i] = H^i ∘ op`.
    pub fn times(&self, powers: &[DiffOp]) -> DiffOp {
        let mut out = DiffOp::zero();
        for (c, p) in self.0.iter().zip(powers) {
            out.add_assign_ref(&p.scale(c));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({})", render_scalar(c)),
                1 => format!("({})*H", render_scalar(c)),
                _ => format!("({})*H^{i}", render_scalar(c)),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, o: &HPoly) -> HPoly {
        let n = self.0.len().max(o.0.len());
        HPoly((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect()).trimmed()
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, o: &HPoly) -> HPoly {
        self + &(-o)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    fn mul(self, o: &HPoly) -> HPoly {
        if self.is_zero() || o.is_zero() {
            return HPoly::default();
        }
        let mut out = vec![ScalarPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        HPoly(out).trimmed()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub alpha: ScalarPoly,
    pub gamma: ScalarPoly,
    pub a: ScalarPoly,
    pub d0: ScalarPoly,
    pub d1: ScalarPoly,
    pub delta0: ScalarPoly,
    pub delta1: ScalarPoly,
    pub epsilon0: ScalarPoly,
    pub epsilon1: ScalarPoly,
    pub zeta0: ScalarPoly,
    pub zeta1: ScalarPoly,
    pub zeta2: ScalarPoly,
    pub z0: ScalarPoly,
    pub z1: ScalarPoly,
    pub z2: ScalarPoly,
}

impl StructureConstants {
    /// The closed forms quoted for this model.
    pub fn printed() -> Self {
        let c = |n: i64, i: u32, j: u32| qk(rat(n, 1), i, j);
        StructureConstants {
            alpha: c(8, 2, 0),
            gamma: c(8, 2, 0),
            a: ScalarPoly::zero(),
            d0: c(16, 4, 0),
            d1: ScalarPoly::zero(),
            delta0: &c(16, 4, 1) - &c(8, 4, 0),
            delta1: c(-8, 2, 0),
            epsilon0: &c(16, 4, 2) - &c(16, 4, 0),
            epsilon1: ScalarPoly::zero(),
            zeta0: &c(16, 6, 2) - &c(16, 6, 1),
            zeta1: &c(-8, 4, 1) + &c(8, 4, 0),
            zeta2: ScalarPoly::zero(),
            z0: c(16, 6, 1),
            z1: c(-8, 4, 0),
            z2: ScalarPoly::zero(),
        }
    }

    pub fn alpha_h(&self) -> HPoly {
        HPoly::constant(self.alpha.clone())
    }
    pub fn gamma_h(&self) -> HPoly {
        HPoly::constant(self.gamma.clone())
    }
    pub fn a_h(&self) -> HPoly {
        HPoly::constant(self.a.clone())
    }
    pub fn delta(&self) -> HPoly {
        HPoly::from_coeffs(vec![self.delta0.clone(), self.delta1.clone()])
    }
    pub fn epsilon(&self) -> HPoly {
        HPoly::from_coeffs(vec![self.epsilon0.clone(), self.epsilon1.clone()])
    }
    pub fn zeta(&self) -> HPoly {
        HPoly::from_coeffs(vec![self.zeta0.clone(), self.zeta1.clone(), self.zeta2.clone()])
    }
    pub fn d(&self) -> HPoly {
        HPoly::from_coeffs(vec![self.d0.clone(), self.d1.clone()])
    }
    pub fn z(&self) -> HPoly {
        HPoly::from_coeffs(vec![self.z0.clone(), self.z1.clone(), self.z2.clone()])
    }

    /// `(name, value)` pairs in a fixed order, for reports.
    pub fn named(&self) -> Vec<(&'static str, &ScalarPoly)> {
        vec![
            ("alpha", &self.alpha),
            ("gamma", &self.gamma),
            ("a", &self.a),
            ("d0", &self.d0),
            ("d1", &self.d1),
            ("delta0", &self.delta0),
            ("delta1", &self.delta1),
            ("epsilon0", &self.epsilon0),
            ("epsilon1", &self.epsilon1),
            ("zeta0", &self.zeta0),
            ("zeta1", &self.zeta1),
            ("zeta2", &self.zeta2),
            ("z0", &self.z0),
            ("z1", &self.z1),
            ("z2", &self.z2),
        ]
    }
}

type Sample = BTreeMap<((u32, u32), MonoKey), Rat>;

/// Solve `Σ x_b columns[b] = target` exactly. `None` if the columns are
/// dependent or the system is inconsistent.
fn solve_exact(columns: &[Sample], target: &Sample) -> Option<Vec<Rat>> {
    let mut keys = BTreeSet::new();
    for c in columns.iter().chain(std::iter::once(target)) {
        keys.extend(c.keys().copied());
    }
    let n = columns.len();
    let mut rows: Vec<Vec<Rat>> = keys
        .iter()
        .map(|key| {
            let mut r: Vec<Rat> = columns
                .iter()
                .map(|c| c.get(key).cloned().unwrap_or_else(Rat::zero))
                .collect();
            r.push(target.get(key).cloned().unwrap_or_else(Rat::zero));
            r
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..n {
        let found = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, found);
        let inv = Rat::one() / &rows[pivot_row][col];
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot) {
                *v -= &f * p;
            }
        }
        pivot_row += 1;
    }
    if rows[n..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| rows[i][n].clone()).collect())
}

/// Newton interpolation of `(k_i, v_i)` as a polynomial in `k`.
fn interpolate(ks: &[Rat], vs: &[Rat]) -> Poly<1> {
    let n = ks.len();
    let mut dd = vs.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&ks[i] - &ks[i - j]);
        }
    }
    let x = Poly::<1>::var(0);
    let mut acc = Poly::<1>::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = &(&acc * &(&x - &Poly::constant(ks[i].clone()))) + &Poly::constant(dd[i].clone());
    }
    acc
}

const SAMPLE_POINTS: i64 = 12;

/// Express `target` as `Σ c_b basis[b]` with `c_b ∈ Q[q, k]`.
///
/// Each coefficient is homogeneous, `c_b = q^{w(target) - w(b)} p_b(k)`, so
/// it is enough to solve at `q = 1` for a handful of rational `k`, interpolate
/// in `k`, and confirm the result symbolically.
pub fn match_combination(target: &DiffOp, basis: &[DiffOp]) -> Result<Vec<ScalarPoly>> {
    let wt = target
        .weight()
        .ok_or_else(|| Error::NoMatch("target is not homogeneous in q".into()))?;
    let weights: Vec<u32> = basis
        .iter()
        .map(|b| b.weight().ok_or_else(|| Error::NoMatch("basis element is not homogeneous".into())))
        .collect::<Result<_>>()?;
    let one = Rat::one();
    let ks: Vec<Rat> = (0..SAMPLE_POINTS).map(|i| rat(2 * i + 3, 11)).collect();
    let mut values: Vec<Vec<Rat>> = vec![Vec::new(); basis.len()];
    for kv in &ks {
        let cols: Vec<Sample> = basis.iter().map(|b| b.sample(&one, kv)).collect();
        let x = solve_exact(&cols, &target.sample(&one, kv))
            .ok_or_else(|| Error::NoMatch(format!("no exact solution at k = {kv}")))?;
        for (slot, v) in values.iter_mut().zip(x) {
            slot.push(v);
        }
    }
    let mut coeffs = Vec::with_capacity(basis.len());
    for (vals, &wb) in values.iter().zip(&weights) {
        let p = interpolate(&ks, vals);
        if p.is_zero() {
            coeffs.push(ScalarPoly::zero());
            continue;
        }
        if wb > wt {
            return Err(Error::NoMatch("coefficient would need a negative power of q".into()));
        }
        let lifted = ScalarPoly::from_terms(p.terms().map(|(e, c)| ([wt - wb, e[0]], c.clone())));
        coeffs.push(lifted);
    }
    let mut residual = target.clone();
    for (c, b) in coeffs.iter().zip(basis) {
        residual.sub_assign_ref(&b.scale(c));
    }
    if !residual.is_zero() {
        return Err(Error::NoMatch(format!(
            "symbolic residual has {} terms",
            residual.term_count()
        )));
    }
    Ok(coeffs)
}

/// Operators entering the matching: `A`, `B`, `C`, `H` and the products
/// used as basis.
#[derive(Clone, Debug)]
pub struct AlgebraOps {
    pub a: DiffOp,
    pub b: DiffOp,
    pub c: DiffOp,
    pub h: DiffOp,
    pub a2: DiffOp,
    pub ab: DiffOp,
    pub b2: DiffOp,
    pub h2: DiffOp,
}

impl AlgebraOps {
    pub fn new(cat: &OperatorCatalog) -> Self {
        let a = cat.r.clone();
        let b = cat.l.clone();
        AlgebraOps {
            a2: a.compose(&a),
            ab: anticommutator(&a, &b),
            b2: b.compose(&b),
            h2: cat.h.compose(&cat.h),
            c: commutator(&a, &b),
            h: cat.h.clone(),
            a,
            b,
        }
    }

    /// `[A², {A,B}, B², A, B, HA, HB, H, H², 1]`
    pub fn basis(&self) -> Vec<DiffOp> {
        vec![
            self.a2.clone(),
            self.ab.clone(),
            self.b2.clone(),
            self.a.clone(),
            self.b.clone(),
            self.h.compose(&self.a),
            self.h.compose(&self.b),
            self.h.clone(),
            self.h2.clone(),
            DiffOp::identity(),
        ]
    }
}

/// Solve `[A,C]` and `[B,C]` for the structure constants.
pub fn extract_structure_constants(cat: &OperatorCatalog) -> Result<StructureConstants> {
    extract_with(&AlgebraOps::new(cat))
}

pub fn extract_with(ops: &AlgebraOps) -> Result<StructureConstants> {
    let basis = ops.basis();
    let ac = match_combination(&commutator(&ops.a, &ops.c), &basis)?;
    let bc = match_combination(&commutator(&ops.b, &ops.c), &basis)?;
    let [a2, ab, b2, a, b, ha, hb, h, hh, one] = <[ScalarPoly; 10]>::try_from(ac).expect("ten coefficients");
    if !b2.is_zero() {
        return Err(Error::NoMatch("[A,C] carries a B² term".into()));
    }
    let consts = StructureConstants {
        alpha: a2,
        gamma: ab,
        a: bc[0].clone(),
        d0: bc[3].clone(),
        d1: bc[5].clone(),
        delta0: a,
        delta1: ha,
        epsilon0: b,
        epsilon1: hb,
        zeta0: one,
        zeta1: h,
        zeta2: hh,
        z0: bc[9].clone(),
        z1: bc[7].clone(),
        z2: bc[8].clone(),
    };
    // The remaining [B,C] coefficients are tied to those of [A,C].
    let tied = [
        (&bc[1], -&consts.alpha),
        (&bc[2], -&consts.gamma),
        (&bc[4], -&consts.delta0),
        (&bc[6], -&consts.delta1),
    ];
    if tied.iter().any(|(got, want)| *got != want) {
        return Err(Error::NoMatch("[B,C] does not have the expected shape".into()));
    }
    Ok(consts)
}
