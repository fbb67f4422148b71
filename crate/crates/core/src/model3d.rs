//! The two three-dimensional channels: a box cross-section (`y, z`) and a
//! disc cross-section (`ρ, φ`). Both reuse the planar x-factor with a real
//! transverse parameter `δ`.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{bessel_j, bessel_zero, gauss_legendre, log_gamma};
use crate::wavefn::{chi_profile, integrate_half_line, Jet, Profile, MAX_ORDER};

fn check_params(k: f64, q: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParam(format!("k must be positive, got {k}")));
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::InvalidParam(format!("q must be positive, got {q}")));
    }
    Ok(())
}

/// `E = q²(2n+1+δ)(2n+2k+δ)`
pub fn energy_3d(n: u32, delta: f64, k: f64, q: f64) -> f64 {
    let n = n as f64;
    q * q * (2.0 * n + 1.0 + delta) * (2.0 * n + 2.0 * k + delta)
}

/// Closed-form normalization of `tanh^k sech^{1+δ} P_n^{(k−1/2,δ)}`.
pub fn channel_norm(n: u32, k: f64, q: f64, delta: f64) -> Result<f64> {
    let nf = n as f64;
    let log = (2.0 * q * (2.0 * nf + k + 0.5 + delta)).ln() + log_gamma(nf + 1.0)? + log_gamma(nf + k + 0.5 + delta)?
        - log_gamma(nf + 1.0 + delta)?
        - log_gamma(nf + k + 0.5)?;
    Ok((0.5 * log).exp())
}

/// `1 / ‖φ‖` by quadrature, for comparison with [`channel_norm`].
pub fn channel_norm_quadrature(n: u32, k: f64, q: f64, delta: f64) -> Result<f64> {
    let raw = Profile::Channel {
        n,
        k,
        q,
        delta,
        norm: 1.0,
    };
    let mass = integrate_half_line(q, |x| raw.value(x).powi(2))?;
    Ok(1.0 / mass.sqrt())
}

fn channel(n: u32, k: f64, q: f64, delta: f64) -> Result<Profile> {
    Ok(Profile::Channel {
        n,
        k,
        q,
        delta,
        norm: channel_norm(n, k, q, delta)?,
    })
}

/// `(l+1)² + (m+1)²`, exact.
pub fn box_delta_sq(l: u32, m: u32) -> u64 {
    let a = l as u64 + 1;
    let b = m as u64 + 1;
    a * a + b * b
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxState {
    pub n: u32,
    pub l: u32,
    pub m: u32,
    pub delta: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub norm: f64,
    #[serde(skip)]
    pub k: f64,
    #[serde(skip)]
    pub q: f64,
}

pub fn box_state(n: u32, l: u32, m: u32, k: f64, q: f64) -> Result<BoxState> {
    check_params(k, q)?;
    let delta = (box_delta_sq(l, m) as f64).sqrt();
    Ok(BoxState {
        n,
        l,
        m,
        delta,
        energy: energy_3d(n, delta, k, q),
        norm: channel_norm(n, k, q, delta)?,
        k,
        q,
    })
}

impl BoxState {
    pub fn field(&self) -> Field3 {
        let x = Profile::Channel {
            n: self.n,
            k: self.k,
            q: self.q,
            delta: self.delta,
            norm: self.norm,
        };
        Field3::product(x, chi_profile(self.l, self.q), chi_profile(self.m, self.q))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CylState {
    pub n: u32,
    pub m: i32,
    pub s: u32,
    pub j_ms: f64,
    pub delta: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub radial_norm: f64,
    #[serde(skip)]
    pub k: f64,
    #[serde(skip)]
    pub q: f64,
    #[serde(skip)]
    pub radius: f64,
}

/// `√2 / (R J_{|m|+1}(j_{|m|,s}))`
pub fn cyl_radial_norm(m: u32, s: u32, radius: f64) -> Result<f64> {
    let j = bessel_zero(m, s)?;
    Ok(2f64.sqrt() / (radius * bessel_j(m + 1, j)?))
}

pub fn cyl_state(n: u32, m: i32, s: u32, k: f64, q: f64, radius: f64) -> Result<CylState> {
    check_params(k, q)?;
    if s == 0 {
        return Err(Error::InvalidParam("Bessel zero index s starts at 1".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParam(format!("R must be positive, got {radius}")));
    }
    let am = m.unsigned_abs();
    let j_ms = bessel_zero(am, s)?;
    let delta = j_ms / (q * radius);
    Ok(CylState {
        n,
        m,
        s,
        j_ms,
        delta,
        energy: energy_3d(n, delta, k, q),
        radial_norm: cyl_radial_norm(am, s, radius)?,
        k,
        q,
        radius,
    })
}

impl CylState {
    pub fn kappa(&self) -> f64 {
        self.j_ms / self.radius
    }

    pub fn radial_profile(&self) -> Profile {
        Profile::Bessel {
            m: self.m.unsigned_abs(),
            kappa: self.kappa(),
            amp: self.radial_norm,
        }
    }

    /// Real form of the angular factor: `cos mφ/√π` for `m > 0`,
    /// `sin |m|φ/√π` for `m < 0`, `1/√(2π)` for `m = 0`.
    pub fn angular_profile(&self) -> Profile {
        let w = self.m.unsigned_abs() as f64;
        match self.m.cmp(&0) {
            Ordering::Equal => Profile::Const(1.0 / (2.0 * PI).sqrt()),
            Ordering::Greater => Profile::Cos { amp: 1.0 / PI.sqrt(), w },
            Ordering::Less => Profile::Sin { amp: 1.0 / PI.sqrt(), w },
        }
    }

    pub fn field(&self) -> Result<Field3> {
        let x = channel(self.n, self.k, self.q, self.delta)?;
        Ok(Field3::product(x, self.radial_profile(), self.angular_profile()))
    }
}

/// `∫_0^R χ_{|m|,s} χ_{|m|,s'} ρ dρ` by Gauss–Legendre on `(0, R)`.
pub fn cyl_radial_overlap(m: u32, s: u32, s2: u32, radius: f64) -> Result<f64> {
    let a = cyl_state(0, m as i32, s, 1.0, 1.0, radius)?.radial_profile();
    let b = cyl_state(0, m as i32, s2, 1.0, 1.0, radius)?.radial_profile();
    let rule = gauss_legendre(96)?.remap(0.0, radius);
    Ok(rule.integrate(|r| a.value(r) * b.value(r) * r))
}

/// A sum of separable products in three variables.
#[derive(Clone, Debug)]
pub struct Field3 {
    profiles: Vec<[Profile; 3]>,
}

/// The cross-section geometry selects the transverse Laplacian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Box,
    Cyl,
}

fn jet_deriv(j: &Jet) -> Jet {
    let mut c = [0.0; MAX_ORDER + 1];
    for n in 0..MAX_ORDER {
        c[n] = (n + 1) as f64 * j.0[n + 1];
    }
    Jet(c)
}

fn jet_var(t: f64) -> Jet {
    let mut c = [0.0; MAX_ORDER + 1];
    c[0] = t;
    c[1] = 1.0;
    Jet(c)
}

impl Field3 {
    pub fn product(a: Profile, b: Profile, c: Profile) -> Self {
        Field3 {
            profiles: vec![[a, b, c]],
        }
    }

    pub fn sum(parts: &[Field3]) -> Self {
        Field3 {
            profiles: parts.iter().flat_map(|f| f.profiles.iter().cloned()).collect(),
        }
    }

    pub fn value(&self, p: [f64; 3]) -> f64 {
        self.profiles
            .iter()
            .map(|t| t[0].value(p[0]) * t[1].value(p[1]) * t[2].value(p[2]))
            .sum()
    }

    /// Expand at `p` into jets so that operators can be chained.
    pub fn at(&self, p: [f64; 3]) -> JetField {
        JetField {
            terms: self
                .profiles
                .iter()
                .map(|t| [t[0].jet(p[0]), t[1].jet(p[1]), t[2].jet(p[2])])
                .collect(),
            point: p,
        }
    }
}

/// A separable sum expanded around `point`; operators act term by term.
#[derive(Clone, Debug)]
pub struct JetField {
    terms: Vec<[Jet; 3]>,
    point: [f64; 3],
}

impl JetField {
    pub fn value(&self) -> f64 {
        self.terms.iter().map(|t| t[0].value() * t[1].value() * t[2].value()).sum()
    }

    fn map(&self, f: impl Fn(&[Jet; 3]) -> Vec<[Jet; 3]>) -> Self {
        JetField {
            terms: self.terms.iter().flat_map(f).collect(),
            point: self.point,
        }
    }

    pub fn d(&self, var: usize) -> Self {
        self.map(|t| {
            let mut u = *t;
            u[var] = jet_deriv(&t[var]);
            vec![u]
        })
    }

    /// Multiply by a function of one variable, given as its jet there.
    pub fn times(&self, var: usize, g: Jet) -> Self {
        self.map(|t| {
            let mut u = *t;
            u[var] = t[var] * g;
            vec![u]
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|t| {
            let mut u = *t;
            u[0] = t[0] * s;
            vec![u]
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&o.terms);
        JetField {
            terms,
            point: self.point,
        }
    }

    /// `−Δ_⊥` of the cross-section.
    pub fn transverse_l(&self, section: Section) -> Self {
        match section {
            Section::Box => self.d(1).d(1).add(&self.d(2).d(2)).scale(-1.0),
            Section::Cyl => {
                let inv = jet_var(self.point[1]).recip();
                let r = self.d(1).d(1);
                let r1 = self.d(1).times(1, inv);
                let phi = self.d(2).d(2).times(1, inv * inv);
                r.add(&r1).add(&phi).scale(-1.0)
            }
        }
    }

    /// `−∂_z²` (box) or `−i∂_φ` with the factor `−i` dropped (disc).
    pub fn second_integral(&self, section: Section) -> Self {
        match section {
            Section::Box => self.d(2).d(2).scale(-1.0),
            Section::Cyl => self.d(2),
        }
    }

    /// `−∂_x cosh² ∂_x + cosh² (−Δ_⊥) − q² cosh² + q² k(k−1) csch²`
    pub fn hamiltonian(&self, section: Section, k: f64, q: f64) -> Self {
        let x = self.point[0];
        let ch = Jet::cosh(q, x);
        let ch2 = ch * ch;
        let csch2 = (Jet::sinh(q, x) * Jet::sinh(q, x)).recip();
        let kinetic = self.d(0).times(0, ch2).d(0).scale(-1.0);
        let trans = self.transverse_l(section).times(0, ch2);
        let pot = self.times(0, ch2 * (-q * q) + csch2 * (q * q * k * (k - 1.0)));
        kinetic.add(&trans).add(&pot)
    }
}

/// `|Hψ − Eψ| / (|E ψ| + |Hψ| scale)` at one point.
pub fn eigen_residual(field: &Field3, section: Section, k: f64, q: f64, energy: f64, p: [f64; 3]) -> f64 {
    let j = field.at(p);
    let hv = j.hamiltonian(section, k, q).value();
    let v = j.value();
    let scale = (energy * v).abs().max(hv.abs()).max(energy.abs() * 1e-12);
    (hv - energy * v).abs() / scale
}

/// Residuals of `[H,L]`, `[H,M]`, `[L,M]` on `field` at `p`, each relative
/// to the size of the larger product.
pub fn commutator_residuals(field: &Field3, section: Section, k: f64, q: f64, p: [f64; 3]) -> [f64; 3] {
    let j = field.at(p);
    let h = |f: &JetField| f.hamiltonian(section, k, q);
    let l = |f: &JetField| f.transverse_l(section);
    let m = |f: &JetField| f.second_integral(section);
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
    [
        rel(h(&l(&j)).value(), l(&h(&j)).value()),
        rel(h(&m(&j)).value(), m(&h(&j)).value()),
        rel(l(&m(&j)).value(), m(&l(&j)).value()),
    ]
}

/// Values of a box state on the five walls at `samples` points each,
/// as the largest absolute value seen.
pub fn box_boundary_max(state: &BoxState, samples: usize) -> f64 {
    let f = state.field();
    let edge = PI / (2.0 * state.q);
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let t = -edge + 2.0 * edge * (i as f64 + 0.5) / samples as f64;
        let x = 0.05 + 6.0 * (i as f64 + 0.5) / samples as f64 / state.q;
        for p in [[0.0, t, 0.3 * t], [x, edge, t], [x, -edge, t], [x, t, edge], [x, t, -edge]] {
            worst = worst.max(f.value(p).abs());
        }
    }
    worst
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegeneracyGroup {
    pub delta_sq: u64,
    pub pairs: Vec<(u32, u32)>,
    /// More than one unordered `{l, m}` shares this `δ²`.
    pub accidental: bool,
}

/// Group the transverse labels `(l, m)` whose ground channel energy is at
/// most `e_max` by exact equality of `δ²`.
pub fn box_degeneracy_scan(e_max: f64, k: f64, q: f64) -> Result<Vec<DegeneracyGroup>> {
    check_params(k, q)?;
    if !e_max.is_finite() {
        return Err(Error::InvalidParam(format!("E_max must be finite, got {e_max}")));
    }
    let mut groups: BTreeMap<u64, Vec<(u32, u32)>> = BTreeMap::new();
    let mut l = 0u32;
    while energy_3d(0, (l + 1) as f64, k, q) <= e_max {
        let mut m = 0u32;
        loop {
            let d2 = box_delta_sq(l, m);
            if energy_3d(0, (d2 as f64).sqrt(), k, q) > e_max {
                break;
            }
            groups.entry(d2).or_default().push((l, m));
            m += 1;
        }
        l += 1;
    }
    Ok(groups
        .into_iter()
        .map(|(delta_sq, pairs)| {
            let distinct: BTreeSet<(u32, u32)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
            DegeneracyGroup {
                delta_sq,
                accidental: distinct.len() > 1,
                pairs,
            }
        })
        .collect())
}

/// Group containing `(l, m)` in a scan, if any.
pub fn group_of(groups: &[DegeneracyGroup], l: u32, m: u32) -> Option<&DegeneracyGroup> {
    groups.iter().find(|g| g.pairs.contains(&(l, m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model3d {
    Box,
    Cyl,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum3dEntry {
    pub model: Model3d,
    /// `(n, l, m)` for the box, `(n, m, s)` for the disc.
    pub quantum_numbers: [i64; 3],
    pub delta: f64,
    pub energy: f64,
    /// Labels equal-energy states: `(n, δ²)` for the box, `(n, |m|, s)` for
    /// the disc.
    pub degeneracy_group: u32,
}

struct HeapItem {
    energy: f64,
    qn: [i64; 3],
    delta: f64,
}

impl PartialEq for HeapItem {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for HeapItem {}
impl PartialOrd for HeapItem {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for HeapItem {
    fn cmp(&self, o: &Self) -> Ordering {
        self.energy.total_cmp(&o.energy).then(self.qn.cmp(&o.qn))
    }
}

/// Lowest `count` states in ascending energy, ties in lexicographic order of
/// the quantum numbers. `E` grows with each label (with `|m|` for the
/// disc), so a best-first walk from the ground state is exhaustive.
pub fn spectrum3d(model: Model3d, count: usize, k: f64, q: f64, radius: f64) -> Result<Vec<Spectrum3dEntry>> {
    check_params(k, q)?;
    if count == 0 {
        return Err(Error::InvalidParam("count must be at least 1".into()));
    }
    let make = |qn: [i64; 3]| -> Result<HeapItem> {
        let (delta, energy) = match model {
            Model3d::Box => {
                let s = box_state(qn[0] as u32, qn[1] as u32, qn[2] as u32, k, q)?;
                (s.delta, s.energy)
            }
            Model3d::Cyl => {
                let s = cyl_state(qn[0] as u32, qn[1] as i32, qn[2] as u32, k, q, radius)?;
                (s.delta, s.energy)
            }
        };
        Ok(HeapItem { energy, qn, delta })
    };
    let neighbours = |qn: [i64; 3]| -> Vec<[i64; 3]> {
        let [n, a, b] = qn;
        match model {
            Model3d::Box => vec![[n + 1, a, b], [n, a + 1, b], [n, a, b + 1]],
            Model3d::Cyl => {
                let mut v = vec![[n + 1, a, b], [n, a, b + 1]];
                if a == 0 {
                    v.push([n, 1, b]);
                    v.push([n, -1, b]);
                } else {
                    v.push([n, a + a.signum(), b]);
                }
                v
            }
        }
    };
    let start = match model {
        Model3d::Box => [0, 0, 0],
        Model3d::Cyl => [0, 0, 1],
    };
    let mut heap = BinaryHeap::new();
    let mut seen = BTreeSet::new();
    heap.push(Reverse(make(start)?));
    seen.insert(start);
    let mut out = Vec::with_capacity(count);
    let mut group_ids: BTreeMap<[i64; 3], u32> = BTreeMap::new();
    while out.len() < count {
        let Some(Reverse(item)) = heap.pop() else { break };
        for nb in neighbours(item.qn) {
            if seen.insert(nb) {
                heap.push(Reverse(make(nb)?));
            }
        }
        let key = match model {
            Model3d::Box => [item.qn[0], box_delta_sq(item.qn[1] as u32, item.qn[2] as u32) as i64, 0],
            Model3d::Cyl => [item.qn[0], item.qn[1].abs(), item.qn[2]],
        };
        let next = group_ids.len() as u32;
        let group = *group_ids.entry(key).or_insert(next);
        out.push(Spectrum3dEntry {
            model,
            quantum_numbers: item.qn,
            delta: item.delta,
            energy: item.energy,
            degeneracy_group: group,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_ground_state() {
        let s = box_state(0, 0, 0, 1.0, 1.0).unwrap();
        assert!((s.delta - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.energy - (4.0 + 3.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn swap_symmetry_of_energy() {
        for (l, m) in [(0, 1), (2, 5), (3, 7)] {
            let a = box_state(2, l, m, 1.5, 0.7).unwrap();
            let b = box_state(2, m, l, 1.5, 0.7).unwrap();
            assert_eq!(a.energy, b.energy);
        }
    }

    #[test]
    fn printed_norm_agrees_with_quadrature() {
        for k in [0.5, 1.0, 2.5] {
            for n in 0..=4 {
                for (l, m) in [(0, 0), (1, 3), (4, 4), (2, 0)] {
                    let d = (box_delta_sq(l, m) as f64).sqrt();
                    let a = channel_norm(n, k, 1.0, d).unwrap();
                    let b = channel_norm_quadrature(n, k, 1.0, d).unwrap();
                    assert!((a - b).abs() <= 1e-10 * a, "n={n} l={l} m={m} k={k}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn box_eigen_residual() {
        let s = box_state(2, 1, 3, 2.5, 1.3).unwrap();
        let f = s.field();
        for p in [[0.4, 0.2, -0.5], [1.1, -0.9, 0.1], [2.0, 0.05, 0.6]] {
            let r = eigen_residual(&f, Section::Box, s.k, s.q, s.energy, p);
            assert!(r < 1e-9, "{r}");
        }
    }

    #[test]
    fn box_walls_vanish() {
        let s = box_state(1, 2, 1, 1.5, 1.0).unwrap();
        assert!(box_boundary_max(&s, 40) < 1e-12);
    }

    #[test]
    fn accidental_group_at_85() {
        let groups = box_degeneracy_scan(200.0, 1.0, 1.0).unwrap();
        let g = group_of(&groups, 1, 8).unwrap();
        assert_eq!(g.delta_sq, 85);
        assert!(g.pairs.contains(&(5, 6)));
        assert!(g.accidental);
        let swap = group_of(&groups, 0, 1).unwrap();
        assert_eq!(swap.pairs, vec![(0, 1), (1, 0)]);
        assert!(!swap.accidental);
        assert_eq!(group_of(&groups, 0, 0).unwrap().pairs, vec![(0, 0)]);
    }

    #[test]
    fn cylinder_ground_state() {
        let s = cyl_state(0, 0, 1, 1.0, 1.0, 1.0).unwrap();
        assert!((s.j_ms - 2.404825557695773).abs() < 1e-12);
        assert!((s.radial_norm - 2f64.sqrt() / 0.5191474972894669).abs() < 1e-12);
        assert!(s.radial_profile().value(1.0).abs() < 1e-12);
    }

    #[test]
    fn cylinder_orthonormal_radials() {
        for m in [0, 1, 3] {
            for s in 1..=3 {
                for s2 in 1..=3 {
                    let v = cyl_radial_overlap(m, s, s2, 1.7).unwrap();
                    let want = if s == s2 { 1.0 } else { 0.0 };
                    assert!((v - want).abs() < 1e-9, "m={m} s={s} s'={s2}: {v}");
                }
            }
        }
    }

    #[test]
    fn cylinder_eigen_residual_and_sign_degeneracy() {
        let a = cyl_state(1, 2, 2, 1.5, 0.8, 1.2).unwrap();
        let b = cyl_state(1, -2, 2, 1.5, 0.8, 1.2).unwrap();
        assert_eq!(a.energy, b.energy);
        let f = a.field().unwrap();
        for p in [[0.5, 0.3, 1.0], [1.4, 0.9, 4.0]] {
            assert!(eigen_residual(&f, Section::Cyl, a.k, a.q, a.energy, p) < 1e-9);
        }
        let ang = a.angular_profile();
        assert!((ang.value(0.0) - ang.value(2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn integrals_commute() {
        let f = Field3::sum(&[
            Field3::product(
                Profile::TanhSech { k: 1.5, q: 0.9, p: 2.3 },
                Profile::Sin { amp: 1.0, w: 1.7 },
                Profile::Cos { amp: 0.5, w: 2.2 },
            ),
            Field3::product(
                Profile::Exp { amp: 0.3, w: -0.4 },
                Profile::Bessel { m: 2, kappa: 3.1, amp: 1.0 },
                Profile::Sin { amp: 1.0, w: 3.0 },
            ),
        ]);
        for section in [Section::Box, Section::Cyl] {
            for r in commutator_residuals(&f, section, 1.5, 0.9, [0.7, 0.6, 0.4]) {
                assert!(r < 1e-9, "{section:?}: {r}");
            }
        }
    }

    #[test]
    fn spectra_are_sorted() {
        let b = spectrum3d(Model3d::Box, 12, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(b[0].quantum_numbers, [0, 0, 0]);
        assert_eq!(b[1].quantum_numbers, [0, 0, 1]);
        assert_eq!(b[2].quantum_numbers, [0, 1, 0]);
        assert_eq!(b[1].degeneracy_group, b[2].degeneracy_group);
        assert!(b.windows(2).all(|w| w[0].energy <= w[1].energy));
        let c = spectrum3d(Model3d::Cyl, 8, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(c[0].quantum_numbers, [0, 0, 1]);
        assert!((c[0].delta - 2.404825557695773).abs() < 1e-12);
        assert_eq!(c[1].quantum_numbers[1], -1);
        assert_eq!(c[2].quantum_numbers[1], 1);
        assert!(c.windows(2).all(|w| w[0].energy <= w[1].energy));
    }
}
