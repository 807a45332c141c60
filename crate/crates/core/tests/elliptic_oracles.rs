use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdexact::elliptic::{
    complete_elliptic_k, jacobi, jacobi_quotient, EllipticModulus, JacobiName, Weierstrass, WeierstrassInvariants,
};

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

fn incomplete_f(phi: f64, k: f64) -> f64 {
    simpson(&|th: f64| 1.0 / (1.0 - k * k * th.sin().powi(2)).sqrt(), 0.0, phi, 1e-15)
}

#[test]
fn k_matches_quadrature() {
    for k in [0.1, 0.5, 1.0 / 2f64.sqrt(), 0.9] {
        let oracle = incomplete_f(FRAC_PI_2, k);
        let got = complete_elliptic_k(EllipticModulus::new(k).unwrap()).unwrap();
        assert!((got - oracle).abs() < 1e-12, "k={k}: {got} vs {oracle}");
    }
}

#[test]
fn jacobi_matches_inverted_integral() {
    for k in [0.1, 0.5, 1.0 / 2f64.sqrt(), 0.9] {
        // amplitude φ with F(φ, k) = 1 by Newton on the quadrature
        let mut phi = 1.0;
        for _ in 0..30 {
            let step = (incomplete_f(phi, k) - 1.0) * (1.0 - k * k * phi.sin().powi(2)).sqrt();
            phi -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let j = jacobi(1.0, EllipticModulus::new(k).unwrap());
        let dn = (1.0 - k * k * phi.sin().powi(2)).sqrt();
        assert!((j.sn - phi.sin()).abs() < 1e-11, "k={k}");
        assert!((j.cn - phi.cos()).abs() < 1e-11, "k={k}");
        assert!((j.dn - dn).abs() < 1e-11, "k={k}");
    }
}

#[test]
fn identities_on_random_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in [0.1, 0.5, 1.0 / 2f64.sqrt(), 0.9] {
        let m = EllipticModulus::new(k).unwrap();
        for _ in 0..10_000 {
            let y: f64 = rng.gen_range(-50.0..50.0);
            let j = jacobi(y, m);
            assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() <= 1e-12);
            assert!((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn derivatives_by_richardson() {
    let m = EllipticModulus::lemniscatic();
    let d = |f: &dyn Fn(f64) -> f64, y: f64| {
        let c = |h: f64| (f(y + h) - f(y - h)) / (2.0 * h);
        (4.0 * c(1e-3) - c(2e-3)) / 3.0
    };
    for y in [0.3, 1.1, 2.0, 3.7, -2.5] {
        let j = jacobi(y, m);
        assert!((d(&|s| jacobi(s, m).sn, y) - j.cn * j.dn).abs() < 1e-9);
        assert!((d(&|s| jacobi(s, m).cn, y) + j.sn * j.dn).abs() < 1e-9);
        assert!((d(&|s| jacobi(s, m).dn, y) + 0.5 * j.sn * j.cn).abs() < 1e-9);
    }
}

#[test]
fn quotient_names_round_trip() {
    let m = EllipticModulus::lemniscatic();
    let ds = jacobi_quotient("ds".parse::<JacobiName>().unwrap(), 0.7, m).unwrap();
    let j = jacobi(0.7, m);
    assert!((ds - j.dn / j.sn).abs() < 1e-14);
    assert!(jacobi_quotient(JacobiName::Ns, 0.0, m).is_none());
}

/// ℘ by RK4 marching of ℘″ = 6℘² − g2/2 from a Laurent seed at z = 0.15.
/// Seeding closer to the pole lets round-off grow like z⁴ along the march.
fn wp_by_ode(g2: f64, g3: f64, z_end: f64) -> (f64, f64) {
    let mut c = vec![0.0f64; 30];
    c[2] = g2 / 20.0;
    c[3] = g3 / 28.0;
    for k in 4..30 {
        let s: f64 = (2..=k - 2).map(|m| c[m] * c[k - m]).sum();
        c[k] = 3.0 * s / ((2 * k + 1) as f64 * (k as f64 - 3.0));
    }
    let z0: f64 = 0.15;
    let mut p = 1.0 / (z0 * z0);
    let mut dp = -2.0 / (z0 * z0 * z0);
    for (k, ck) in c.iter().enumerate().skip(2) {
        let e = (2 * k - 2) as i32;
        p += ck * z0.powi(e);
        dp += ck * e as f64 * z0.powi(e - 1);
    }
    let n = 100_000;
    let h = (z_end - z0) / n as f64;
    let f = |p: f64, dp: f64| (dp, 6.0 * p * p - 0.5 * g2);
    for _ in 0..n {
        let k1 = f(p, dp);
        let k2 = f(p + 0.5 * h * k1.0, dp + 0.5 * h * k1.1);
        let k3 = f(p + 0.5 * h * k2.0, dp + 0.5 * h * k2.1);
        let k4 = f(p + h * k3.0, dp + h * k3.1);
        p += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        dp += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
    }
    (p, dp)
}

#[test]
fn weierstrass_matches_ode_marching() {
    for (g2, g3, z) in [(0.0, 100.0, 0.3), (0.0, 100.0, 0.65), (4.0, 1.0, 0.8), (1.0, -0.5, 1.2), (0.0, 1.0, 1.5)] {
        let w = Weierstrass::new(WeierstrassInvariants::new(g2, g3)).unwrap();
        let (p, dp) = w.eval(z).unwrap();
        let (po, dpo) = wp_by_ode(g2, g3, z);
        assert!((p - po).abs() <= 1e-9 * po.abs().max(1.0), "g=({g2},{g3}) z={z}: {p} vs {po}");
        assert!((dp - dpo).abs() <= 1e-8 * dpo.abs().max(1.0), "g=({g2},{g3}) z={z}: {dp} vs {dpo}");
    }
}

#[test]
fn weierstrass_identity_and_period() {
    let w = Weierstrass::new(WeierstrassInvariants::new(0.0, 100.0)).unwrap();
    let omega = w.half_period().unwrap();
    for i in 1..200 {
        let z = 2.0 * omega * i as f64 / 200.0;
        let (p, dp) = w.eval(z).unwrap();
        let rhs = 4.0 * p * p * p - 100.0;
        assert!((dp * dp - rhs).abs() <= 1e-9 * rhs.abs().max(p.powi(3).abs()), "z={z}");
        let (q, _) = w.eval(z + 2.0 * omega).unwrap();
        assert!((p - q).abs() <= 1e-9 * p.abs().max(1.0));
    }
    let (_, dp) = w.eval(omega).unwrap();
    assert!(dp.abs() < 1e-6);
}

proptest! {
    #[test]
    fn jacobi_identities(k in 0.0f64..0.999, y in -100.0f64..100.0) {
        let j = jacobi(y, EllipticModulus::new(k).unwrap());
        prop_assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() <= 1e-12);
        prop_assert!((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn jacobi_periodic_and_odd(k in 0.0f64..0.99, y in -20.0f64..20.0) {
        let m = EllipticModulus::new(k).unwrap();
        let big_k = complete_elliptic_k(m).unwrap();
        let a = jacobi(y, m);
        let b = jacobi(y + 4.0 * big_k, m);
        let r = jacobi(-y, m);
        prop_assert!((a.sn - b.sn).abs() <= 1e-9 && (a.cn - b.cn).abs() <= 1e-9 && (a.dn - b.dn).abs() <= 1e-9);
        prop_assert!((a.sn + r.sn).abs() <= 1e-12 && (a.cn - r.cn).abs() <= 1e-12);
    }

    #[test]
    fn weierstrass_even(g3 in 0.5f64..1e4, s in 0.05f64..0.95) {
        let w = Weierstrass::new(WeierstrassInvariants::new(0.0, g3)).unwrap();
        let z = s * 2.0 * w.half_period().unwrap();
        let (p, dp) = w.eval(z).unwrap();
        let (q, dq) = w.eval(-z).unwrap();
        prop_assert!((p - q).abs() <= 1e-12 * p.abs().max(1.0));
        prop_assert!((dp + dq).abs() <= 1e-12 * dp.abs().max(p.abs().powf(1.5)));
    }
}
