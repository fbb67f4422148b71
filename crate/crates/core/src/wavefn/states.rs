//! The separated eigenfunctions of the planar channel, zero modes, and the
//! energy bookkeeping.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

use super::field::SmoothField;
use super::profile::Profile;
use super::quad::integrate_half_line;

fn check_params(k: f64, q: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParam(format!("k must be positive, got {k}")));
    }
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::InvalidParam(format!("q must be positive, got {q}")));
    }
    Ok(())
}

/// `E_N = q²(N+2)(N+2k+1)`
pub fn energy_2d(n_total: u32, k: f64, q: f64) -> f64 {
    let n = n_total as f64;
    q * q * (n + 2.0) * (n + 2.0 * k + 1.0)
}

pub fn degeneracy_2d(n_total: u32) -> u32 {
    n_total / 2 + 1
}

/// `r_ν = q² ν(ν+2k)`
pub fn r_eigenvalue(nu: u32, k: f64, q: f64) -> f64 {
    let v = nu as f64;
    q * q * v * (v + 2.0 * k)
}

/// Normalized x-factor `tanh^k sech^{1+δ} P_n^{(k-1/2,δ)}(1-2tanh²)`; the
/// planar model uses `δ = l+1`.
pub fn channel_profile(n: u32, k: f64, q: f64, delta: f64) -> Result<Profile> {
    check_params(k, q)?;
    let raw = Profile::Channel {
        n,
        k,
        q,
        delta,
        norm: 1.0,
    };
    let mass = integrate_half_line(q, |x| raw.value(x).powi(2))?;
    Ok(Profile::Channel {
        n,
        k,
        q,
        delta,
        norm: 1.0 / mass.sqrt(),
    })
}

pub fn chi_profile(l: u32, q: f64) -> Profile {
    let amp = (2.0 * q / PI).sqrt();
    let w = (l + 1) as f64 * q;
    if l % 2 == 0 {
        Profile::Cos { amp, w }
    } else {
        Profile::Sin { amp, w }
    }
}

/// The discarded y-solution; unnormalized. `l = -1` gives the constant.
pub fn chibar_profile(l: i32, q: f64) -> Profile {
    let w = (l + 1) as f64 * q;
    if l >= 0 && l % 2 == 0 {
        Profile::Sin { amp: 1.0, w }
    } else {
        Profile::Cos { amp: 1.0, w }
    }
}

/// `ψ_{n,l} = φ_{n,l}(x) χ_l(y)`, normalized on the strip.
pub fn psi_nl(n: u32, l: u32, k: f64, q: f64) -> Result<SmoothField> {
    let x = channel_profile(n, k, q, (l + 1) as f64)?;
    Ok(SmoothField::separable(x, chi_profile(l, q), format!("psi:{n},{l}"), true))
}

pub fn chi_l(l: u32, q: f64) -> SmoothField {
    SmoothField::separable(Profile::Const(1.0), chi_profile(l, q), format!("chi:{l}"), true)
}

pub fn chibar_l(l: i32, q: f64) -> SmoothField {
    SmoothField::separable(Profile::Const(1.0), chibar_profile(l, q), format!("chibar:{l}"), false)
}

/// `φ_{n,l}(x) χ̄_l(y)`: solves the separated equations but not the
/// boundary conditions.
pub fn psi_bar_nl(n: u32, l: u32, k: f64, q: f64) -> Result<SmoothField> {
    let x = channel_profile(n, k, q, (l + 1) as f64)?;
    Ok(SmoothField::separable(
        x,
        chibar_profile(l as i32, q),
        format!("psibar:{n},{l}"),
        false,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroModeKind {
    Eta,
    Etabar,
}

/// `ω_s = tanh^k sech^{s+1} cos^s` (annihilated by `η`) or
/// `ω̄_s = tanh^k sech^{s+1} sin^s` (annihilated by `η̄`).
pub fn omega_zero_mode(kind: ZeroModeKind, s: f64, k: f64, q: f64) -> Result<SmoothField> {
    check_params(k, q)?;
    let x = Profile::TanhSech { k, q, p: s + 1.0 };
    let (y, tag, physical) = match kind {
        ZeroModeKind::Eta => (Profile::TrigPower { q, s, cos: true }, "omega", s > 0.0),
        ZeroModeKind::Etabar => (Profile::TrigPower { q, s, cos: false }, "omegabar", false),
    };
    Ok(SmoothField::separable(x, y, format!("{tag}:{s}"), physical))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumEntry {
    #[serde(rename = "N")]
    pub n_total: u32,
    pub n: u32,
    pub l: u32,
    pub energy: f64,
    pub l_eig: f64,
    pub deg: u32,
}

/// The first `count` states `(N, n, l)` ordered by `N`, then by `n`.
pub fn spectrum_2d(count: usize, k: f64, q: f64) -> Result<Vec<SpectrumEntry>> {
    check_params(k, q)?;
    let mut out = Vec::with_capacity(count);
    let mut n_total = 0;
    while out.len() < count {
        for n in 0..=n_total / 2 {
            if out.len() == count {
                break;
            }
            let l = n_total - 2 * n;
            out.push(SpectrumEntry {
                n_total,
                n,
                l,
                energy: energy_2d(n_total, k, q),
                l_eig: ((l + 1) as f64 * q).powi(2),
                deg: degeneracy_2d(n_total),
            });
        }
        n_total += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_prefix() {
        let s = spectrum_2d(5, 1.0, 1.0).unwrap();
        let e: Vec<f64> = s.iter().map(|e| e.energy).collect();
        assert_eq!(e, vec![6.0, 12.0, 20.0, 20.0, 30.0]);
        assert_eq!(s[2].deg, 2);
    }

    #[test]
    fn wall_and_edges_vanish() {
        let f = psi_nl(1, 2, 1.5, 1.0).unwrap();
        assert_eq!(f.value(0.0, 0.3), 0.0);
        assert!(f.value(0.4, PI / 2.0).abs() < 1e-15);
        let c = chi_l(0, 1.0);
        assert!(c.value(1.0, PI / 2.0).abs() < 1e-15);
        let b = chibar_l(0, 1.0);
        assert!((b.value(1.0, PI / 2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bad_parameters() {
        assert!(psi_nl(0, 0, 0.0, 1.0).is_err());
        assert!(psi_nl(0, 0, 1.0, -1.0).is_err());
    }

    #[test]
    fn zero_mode_flags() {
        assert!(omega_zero_mode(ZeroModeKind::Eta, 2.0, 1.0, 1.0).unwrap().physical);
        assert!(!omega_zero_mode(ZeroModeKind::Eta, -0.5, 1.0, 1.0).unwrap().physical);
        assert!(!omega_zero_mode(ZeroModeKind::Etabar, 2.0, 1.0, 1.0).unwrap().physical);
    }
}
