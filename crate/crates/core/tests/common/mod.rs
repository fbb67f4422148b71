#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pdm_channel::coeffring::rat;
use pdm_channel::quadalg::{k_plus, kpoly_c, kpoly_k, KPoly, RatFunc};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Interior points of the strip, away from the wall and the edges.
pub fn strip_points(seed: u64, count: usize, q: f64) -> Vec<(f64, f64)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let x = r.gen_range(0.15..3.0) / q;
            let y = r.gen_range(-0.9..0.9) * FRAC_PI_2 / q;
            (x, y)
        })
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn c(n: i64) -> KPoly {
    kpoly_c(rat(n, 1))
}

/// `a k + b`
fn lin(a: i64, b: i64) -> KPoly {
    &kpoly_k().scale(&rat(a, 1)) + &c(b)
}

fn product(fs: &[KPoly]) -> KPoly {
    fs.iter().fold(c(1), |acc, f| &acc * f)
}

/// The printed N = 4 block, divided by q² (diagonal) or q⁴ (squared
/// off-diagonal couplings), indexed by ν.
pub fn printed_level_four() -> ([RatFunc; 3], [RatFunc; 2]) {
    let k = kpoly_k();
    let sigma0 = RatFunc::new(&c(5) * &k_plus(3), k_plus(1));
    let sigma2 = RatFunc::new(
        &(&(&k * &k).scale(&rat(17, 1)) + &k.scale(&rat(76, 1))) + &c(39),
        &k_plus(1) * &k_plus(3),
    );
    let sigma4 = RatFunc::new(lin(13, 21), k_plus(3));
    // (3/(k+3))² · 2(k+1)(2k+3)(2k+9)/(k+2)
    let tau4 = RatFunc::new(
        product(&[c(18), k_plus(1), lin(2, 3), lin(2, 9)]),
        product(&[k_plus(2), k_plus(3), k_plus(3)]),
    );
    // (1/(k+1))² · 10(k+3)(2k+1)(2k+7)/(k+2)
    let tau2 = RatFunc::new(
        product(&[c(10), k_plus(3), lin(2, 1), lin(2, 7)]),
        product(&[k_plus(2), k_plus(1), k_plus(1)]),
    );
    ([sigma0, sigma2, sigma4], [tau2, tau4])
}
