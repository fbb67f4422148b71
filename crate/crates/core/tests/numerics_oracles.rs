mod common;

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use rand::Rng;

use pdm_channel::coeffring::{rat, rat_to_f64, Rat};
use pdm_channel::numerics::{
    bessel_j, bessel_zero, composite, fd_convergence_order, fd_cross_check, gauss_legendre, jacobi_p,
    jacobi_p_generic, log_gamma, Scalar,
};
use pdm_channel::wavefn::Profile;

/// Value with first and second derivative.
#[derive(Clone, Copy, Debug)]
struct Jet2(f64, f64, f64);

impl Jet2 {
    fn var(t: f64) -> Self {
        Jet2(t, 1.0, 0.0)
    }

    /// `f ∘ self` given `f, f', f''` at the value.
    fn chain(self, f: f64, f1: f64, f2: f64) -> Self {
        Jet2(f, f1 * self.1, f2 * self.1 * self.1 + f1 * self.2)
    }

    fn powf(self, a: f64) -> Self {
        let v = self.0;
        self.chain(v.powf(a), a * v.powf(a - 1.0), a * (a - 1.0) * v.powf(a - 2.0))
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2(self.0 - o.0, self.1 - o.1, self.2 - o.2)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2(
            self.0 * o.0,
            self.1 * o.0 + self.0 * o.1,
            self.2 * o.0 + 2.0 * self.1 * o.1 + self.0 * o.2,
        )
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, s: f64) -> Jet2 {
        Jet2(self.0 * s, self.1 * s, self.2 * s)
    }
}

impl Scalar for Jet2 {
    fn from_f64(v: f64) -> Self {
        Jet2(v, 0.0, 0.0)
    }
}

#[test]
fn channel_profile_derivatives_match_second_order_duals() {
    let (n, k, q, delta) = (3, 1.5, 0.8, 2.3);
    let p = Profile::Channel {
        n,
        k,
        q,
        delta,
        norm: 1.0,
    };
    for x in [0.3, 1.1, 2.4] {
        let t = Jet2::var(x);
        let th = (q * x).tanh();
        let sech = 1.0 / (q * x).cosh();
        // d tanh(qx) = q sech², d² = −2q² sech² tanh
        let tanh = t.chain(th, q * sech * sech, -2.0 * q * q * sech * sech * th);
        // d sech(qx) = −q sech tanh, d² = q² sech (tanh² − sech²)
        let sechj = t.chain(sech, -q * sech * th, q * q * sech * (th * th - sech * sech));
        let z = Jet2::from_f64(1.0) - tanh * tanh * 2.0;
        let want = tanh.powf(k) * sechj.powf(1.0 + delta) * jacobi_p_generic(n, k - 0.5, delta, z);
        let got = p.jet(x);
        for (g, w) in [(got.value(), want.0), (got.deriv(1), want.1), (got.deriv(2), want.2)] {
            assert!((g - w).abs() <= 1e-12 * w.abs().max(1.0), "x={x}: {g} vs {w}");
        }
    }
}

/// Generalized binomial `C(x, j)` for rational `x`.
fn binom(x: &Rat, j: u32) -> Rat {
    (0..j).fold(rat(1, 1), |acc, i| acc * (x - rat(i as i64, 1)) / rat(i as i64 + 1, 1))
}

/// `Σ_s C(n+a, n−s) C(n+b, s) ((z−1)/2)^s ((z+1)/2)^{n−s}`
fn jacobi_explicit(n: u32, a: &Rat, b: &Rat, z: &Rat) -> Rat {
    let zm = (z - rat(1, 1)) / rat(2, 1);
    let zp = (z + rat(1, 1)) / rat(2, 1);
    let na = a + rat(n as i64, 1);
    let nb = b + rat(n as i64, 1);
    (0..=n).fold(rat(0, 1), |acc, s| {
        let pow = |v: &Rat, e: u32| (0..e).fold(rat(1, 1), |p, _| p * v);
        acc + binom(&na, n - s) * binom(&nb, s) * pow(&zm, s) * pow(&zp, n - s)
    })
}

/// The three-term recurrence in exact rationals.
fn jacobi_recurrence_exact(n: u32, a: &Rat, b: &Rat, z: &Rat) -> Rat {
    let one = rat(1, 1);
    let two = rat(2, 1);
    let mut pm2 = one.clone();
    let mut pm1 = (a - b) / &two + z * (a + b + &two) / &two;
    if n == 0 {
        return pm2;
    }
    for j in 2..=n {
        let jf = rat(j as i64, 1);
        let s = &jf * &two + a + b;
        let c0 = &two * &jf * (&jf + a + b) * (&s - &two);
        let c1 = (&s - &one) * &s * (&s - &two);
        let c2 = (&s - &one) * (a * a - b * b);
        let c3 = &two * (&jf + a - &one) * (&jf + b - &one) * &s;
        let next = ((z * &c1 + c2) * &pm1 - c3 * &pm2) / c0;
        pm2 = pm1;
        pm1 = next;
    }
    pm1
}

#[test]
fn jacobi_p3_against_exact_oracles() {
    let (a, b, z) = (rat(1, 2), rat(2, 1), rat(3, 10));
    let explicit = jacobi_explicit(3, &a, &b, &z);
    let rec = jacobi_recurrence_exact(3, &a, &b, &z);
    assert_eq!(explicit, rec);
    let got = jacobi_p(3, 0.5, 2.0, 0.3).unwrap();
    let want = rat_to_f64(&explicit);
    assert!((got - want).abs() <= 1e-12 * want.abs(), "{got} vs {want}");
}

#[test]
fn jacobi_matches_explicit_sum_up_to_degree_twelve() {
    for n in 0..=12 {
        for (a, b) in [(rat(-1, 2), rat(1, 1)), (rat(3, 2), rat(7, 3)), (rat(2, 1), rat(1, 2))] {
            for z in [rat(-9, 10), rat(0, 1), rat(2, 5), rat(1, 1)] {
                let want = rat_to_f64(&jacobi_explicit(n, &a, &b, &z));
                let got = jacobi_p(n, rat_to_f64(&a), rat_to_f64(&b), rat_to_f64(&z)).unwrap();
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "n={n}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn jacobi_derivative_identity() {
    let (n, a, b) = (5, 0.5, 2.2);
    for z in [-0.6, 0.1, 0.7] {
        let h = 1e-5;
        let fd = (jacobi_p(n, a, b, z + h).unwrap() - jacobi_p(n, a, b, z - h).unwrap()) / (2.0 * h);
        let exact = 0.5 * (n as f64 + a + b + 1.0) * jacobi_p(n - 1, a + 1.0, b + 1.0, z).unwrap();
        assert!((fd - exact).abs() <= 1e-8 * exact.abs().max(1.0));
    }
}

/// `J_m(z) = (1/π) ∫_0^π cos(mτ − z sin τ) dτ`
fn bessel_integral(m: u32, z: f64) -> f64 {
    let rule = composite(0.0, PI, 64, 24).unwrap();
    rule.integrate(|t| (m as f64 * t - z * t.sin()).cos()) / PI
}

#[test]
fn bessel_against_integral_representation() {
    for m in [0, 1, 2, 5, 10] {
        for z in [0.3, 2.0, 7.5, 15.0, 40.0, 90.0] {
            let got = bessel_j(m, z).unwrap();
            let want = bessel_integral(m, z);
            assert!((got - want).abs() <= 1e-12, "J_{m}({z}): {got} vs {want}");
        }
    }
}

#[test]
fn bessel_recurrence_at_random_points() {
    let mut r = common::rng(7);
    for _ in 0..200 {
        let z: f64 = r.gen_range(0.1..50.0);
        let m: u32 = r.gen_range(1..12);
        let lhs = bessel_j(m - 1, z).unwrap() + bessel_j(m + 1, z).unwrap();
        let rhs = 2.0 * m as f64 / z * bessel_j(m, z).unwrap();
        assert!((lhs - rhs).abs() <= 1e-11, "m={m} z={z}");
    }
}

#[test]
fn first_bessel_zero() {
    let j = bessel_zero(0, 1).unwrap();
    assert!((j - 2.404825557695773).abs() <= 1e-12);
    assert!(bessel_integral(0, j).abs() < 1e-13);
}

#[test]
fn gamma_known_values() {
    assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
    assert!((log_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
    assert!((log_gamma(0.5).unwrap().exp() - 1.7724538509055160).abs() < 1e-14);
    let mut r = common::rng(11);
    for _ in 0..100 {
        let x: f64 = r.gen_range(0.1..30.0);
        let ratio = (log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap()).exp();
        assert!((ratio - x).abs() <= 1e-12 * x);
    }
}

#[test]
fn gauss_legendre_exactness() {
    let r2 = gauss_legendre(2).unwrap();
    assert!((r2.nodes[0].abs() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    assert_eq!(gauss_legendre(5).unwrap().integrate(|x| x.powi(9)).abs(), 0.0);
    let r3 = gauss_legendre(3).unwrap().remap(0.0, 1.0);
    assert!((r3.integrate(|t| t.powi(4)) - 0.2).abs() < 1e-15);
    // Normalization integrands become polynomials in t = tanh qx.
    let big = gauss_legendre(40).unwrap().remap(0.0, 1.0);
    let p = |t: f64| t.powi(2) * (1.0 - t * t).powi(3);
    let exact = 1.0 / 3.0 - 3.0 / 5.0 + 3.0 / 7.0 - 1.0 / 9.0;
    assert!((big.integrate(p) - exact).abs() < 1e-15);
}

#[test]
fn fd_ground_state_converges_at_second_order() {
    let (ratio, order) = fd_convergence_order(1.0, 1.0, 1.0, 12.0, 200, 0, 6.0).unwrap();
    assert!(ratio > 3.6 && ratio < 4.4, "ratio {ratio}, order {order}");
}

#[test]
fn fd_reproduces_low_levels() {
    for (k, l, want) in [(1.0, 0u32, [6.0, 20.0]), (2.0, 0, [10.0, 28.0])] {
        let fd = fd_cross_check((l + 1) as f64, k, 1.0, 12.0, 400).unwrap();
        for (got, w) in fd.extrapolated.iter().zip(want) {
            assert!(common::rel(*got, w) < 1e-3, "k={k}: {got} vs {w}");
        }
    }
    let fd = fd_cross_check(2f64.sqrt(), 1.0, 1.0, 12.0, 400).unwrap();
    assert!(common::rel(fd.extrapolated[0], 4.0 + 3.0 * 2f64.sqrt()) < 1e-3);
}
