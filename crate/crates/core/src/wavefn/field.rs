use crate::error::{Error, Result};

use super::jet::{JET_LEN, MAX_ORDER};
use super::profile::Profile;

/// One separable piece `coef · X(x) · Y(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coef: f64,
    pub x: Profile,
    pub y: Profile,
}

/// A finite sum of separable terms on the strip, with exact derivatives up
/// to order six.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothField {
    pub terms: Vec<Term>,
    pub tag: String,
    pub physical: bool,
}

/// Mixed partial derivatives `∂x^i ∂y^j f` at a point, `i + j ≤ order`.
#[derive(Clone, Debug)]
pub struct Partials {
    table: [[f64; JET_LEN]; JET_LEN],
    order: usize,
}

impl Partials {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i + j <= self.order, "partial ({i},{j}) beyond order {}", self.order);
        self.table[i][j]
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

impl SmoothField {
    pub fn separable(x: Profile, y: Profile, tag: impl Into<String>, physical: bool) -> Self {
        SmoothField {
            terms: vec![Term { coef: 1.0, x, y }],
            tag: tag.into(),
            physical,
        }
    }

    /// `Σ c_i f_i`; physical iff every input is.
    pub fn combine(parts: &[(f64, &SmoothField)], tag: impl Into<String>) -> Self {
        let mut terms = Vec::new();
        for (c, f) in parts {
            for t in &f.terms {
                terms.push(Term {
                    coef: c * t.coef,
                    x: t.x.clone(),
                    y: t.y.clone(),
                });
            }
        }
        SmoothField {
            terms,
            tag: tag.into(),
            physical: parts.iter().all(|(_, f)| f.physical),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coef *= s;
        }
        out
    }

    pub fn max_order(&self) -> u32 {
        MAX_ORDER as u32
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coef * t.x.value(x) * t.y.value(y))
            .sum()
    }

    pub fn partials(&self, x: f64, y: f64, order: u32) -> Result<Partials> {
        let order = order as usize;
        if order > MAX_ORDER {
            return Err(Error::DerivativeOrderUnsupported {
                requested: order as u32,
                max: MAX_ORDER as u32,
            });
        }
        let mut table = [[0.0; JET_LEN]; JET_LEN];
        for t in &self.terms {
            let jx = t.x.jet(x);
            let jy = t.y.jet(y);
            for i in 0..=order {
                let dx = jx.deriv(i) * t.coef;
                for j in 0..=order - i {
                    table[i][j] += dx * jy.deriv(j);
                }
            }
        }
        Ok(Partials { table, order })
    }
}
