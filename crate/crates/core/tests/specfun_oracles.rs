mod common;

use common::{bessel_k_quadrature, hyp2f1_dd};
use matsusy_core::specfun::{
    bessel_i, bessel_ik, bessel_k, complex_log_gamma, gamma, gauss_2f1, gauss_2f1_split, HypParams,
};
use num_complex::Complex64;
use proptest::prelude::*;

const ORDERS: [f64; 10] = [0.0, 0.2, 0.5, 1.0, 1.7, 2.5, 3.3, 5.0, 7.2, 10.0];
const ARGS: [f64; 9] = [1e-6, 0.01, 0.5, 1.9, 2.1, 8.0, 29.0, 31.0, 50.0];

#[test]
fn bessel_k_matches_quadrature() {
    let mut worst: f64 = 0.0;
    for &nu in &ORDERS {
        for &x in &ARGS {
            let k = bessel_k(nu, x).unwrap();
            let q = bessel_k_quadrature(nu, x);
            let rel = (k / q - 1.0).abs();
            worst = worst.max(rel);
            assert!(
                rel < 1e-12,
                "K_{nu}({x}) = {k:e}, quadrature {q:e}, rel {rel:e}"
            );
        }
    }
    eprintln!("worst relative error vs quadrature: {worst:e}");
}

#[test]
fn bessel_k_frozen_values() {
    let cases = [
        (0.0, 1.0, 0.421_024_438_240_708_33),
        (0.2, 1e-6, 41.629_756_515_419_595),
        (3.3, 0.7, 40.693_867_201_698_251),
        (10.0, 50.0, 9.150_988_209_987_996e-23),
        (7.5, 31.0, 1.877_910_655_267_091_2e-14),
        (1.1, 2.0, 0.145_963_482_519_406_48),
    ];
    for (nu, x, want) in cases {
        let got = bessel_k(nu, x).unwrap();
        assert!(
            (got / want - 1.0).abs() < 1e-12,
            "K_{nu}({x}) = {got:e}, want {want:e}"
        );
    }
}

#[test]
fn bessel_k_is_positive_and_decreasing() {
    for &nu in &ORDERS {
        let mut prev = f64::INFINITY;
        for i in 0..400 {
            let x = 1e-3 * 1.03f64.powi(i);
            let k = bessel_k(nu, x).unwrap();
            assert!(k > 0.0 && k < prev, "ν={nu} x={x}");
            prev = k;
        }
    }
}

#[test]
fn wronskian_against_finite_difference_derivatives() {
    let (nu, y) = (0.2, 1.5);
    let d = 1e-5;
    let di = (bessel_i(nu, y + d).unwrap() - bessel_i(nu, y - d).unwrap()) / (2.0 * d);
    let dk = (bessel_k(nu, y + d).unwrap() - bessel_k(nu, y - d).unwrap()) / (2.0 * d);
    let w = bessel_i(nu, y).unwrap() * dk - di * bessel_k(nu, y).unwrap();
    assert!((w + 1.0 / y).abs() < 1e-9, "{w}");
    let (i, ip, k, kp) = bessel_ik(nu, y).unwrap();
    assert!((i * kp - ip * k + 1.0 / y).abs() < 1e-14);
}

#[test]
fn bessel_i_half_integer() {
    let v = bessel_i(0.5, 1.0).unwrap();
    let exact = (2.0 / std::f64::consts::PI).sqrt() * 1f64.sinh();
    assert!((v - exact).abs() < 1e-15);
    assert!((v - 0.937_674_888_245_488).abs() < 1e-7);
}

proptest! {
    #[test]
    fn bessel_k_recurrence(nu in 1.0f64..9.0, y in 1e-3f64..50.0) {
        let lhs = bessel_k(nu + 1.0, y).unwrap();
        let rhs = bessel_k(nu - 1.0, y).unwrap() + 2.0 * nu / y * bessel_k(nu, y).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() < 1e-9);
    }

    #[test]
    fn hypergeometric_contiguous_relation(
        a in -2.5f64..2.5, b in -2.5f64..2.5, c in 0.3f64..4.0, y in 0.0f64..0.999,
    ) {
        let f = |a: f64, b: f64, c: f64| gauss_2f1(&HypParams::real(a, b, c), y).unwrap();
        let t1 = c * (1.0 - y) * f(a, b, c);
        let t2 = c * f(a - 1.0, b, c);
        let t3 = (c - b) * y * f(a, b, c + 1.0);
        let scale = t1.abs().max(t2.abs()).max(t3.abs()).max(1.0);
        prop_assert!((t1 - t2 + t3).abs() < 1e-9 * scale, "residual {}", t1 - t2 + t3);
    }

    #[test]
    fn hypergeometric_matches_extended_precision_series(
        re in -1.5f64..1.5, im in 0.0f64..2.5, c in 0.2f64..3.5, y in 0.0f64..0.95,
    ) {
        let got = gauss_2f1(&HypParams::conjugate(re, im, c), y).unwrap();
        let want = hyp2f1_dd(re, im, 0.0, true, c, y);
        prop_assert!((got - want).abs() < 1e-10 * want.abs().max(1.0));
    }
}

#[test]
fn hypergeometric_series_oracle_fifty_points() {
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for &(a, b_or_im, c, conj) in &[
        (0.0, 1.0, 0.3, true),
        (0.5, 0.8, 1.5, true),
        (-0.7, 1.9, 2.2, true),
        (1.5, 0.4, 2.5, true),
        (0.3, 0.9, 1.7, false),
        (-0.4, 1.2, 1.3, false),
        (2.1, -1.3, 0.6, false),
        (-2.0, 3.0, 0.5, false),
        (1.0, 1.0, 2.0, false),
        (0.25, 2.5, 3.75, false),
    ] {
        for &y in &[0.1, 0.35, 0.6, 0.8, 0.95] {
            let p = if conj {
                HypParams::conjugate(a, b_or_im, c)
            } else {
                HypParams::real(a, b_or_im, c)
            };
            let got = gauss_2f1(&p, y).unwrap();
            let want = if conj {
                hyp2f1_dd(a, b_or_im, 0.0, true, c, y)
            } else {
                hyp2f1_dd(a, 0.0, b_or_im, false, c, y)
            };
            let err = (got - want).abs() / want.abs().max(1.0);
            worst = worst.max(err);
            assert!(err < 1e-10, "{p:?} y={y}: {got} vs {want}");
            count += 1;
        }
    }
    assert_eq!(count, 50);
    eprintln!("worst 2F1 error vs double-double series: {worst:e}");
}

#[test]
fn conjugate_example_is_real_and_matches() {
    let got = gauss_2f1(&HypParams::conjugate(0.0, 1.0, 0.3), 0.5).unwrap();
    let want = hyp2f1_dd(0.0, 1.0, 0.0, true, 0.3, 0.5);
    assert!((got - want).abs() < 1e-12 * want.abs());
}

#[test]
fn hypergeometric_near_one_frozen_values() {
    let cases = [
        (
            HypParams::real(0.3, 0.9, 1.7),
            0.97,
            1.406_473_617_871_353_2,
        ),
        (
            HypParams::real(0.3, 0.9, 1.7),
            0.999_999,
            1.558_096_010_336_966_6,
        ),
        (
            HypParams::real(-0.4, 1.2, 1.3),
            0.99,
            0.275_421_440_410_980_4,
        ),
        (
            HypParams::real(0.5, 0.5, 1.0),
            0.98,
            2.135_312_763_649_669_2,
        ),
        (
            HypParams::real(0.7, 1.1, 3.8),
            0.995,
            1.377_686_112_304_101_4,
        ),
        (HypParams::real(0.7, 1.1, 0.8), 0.9999, 9427.981_905_185_251),
        (
            HypParams::conjugate(0.0, 1.5, 0.3),
            0.97,
            76.805_497_721_327_64,
        ),
        (
            HypParams::conjugate(1.2, 0.8, 2.4),
            0.99,
            10.374_482_131_639_779,
        ),
        (
            HypParams::conjugate(1.2, 0.8, 3.4),
            0.9995,
            3.481_515_140_240_601,
        ),
        (
            HypParams::conjugate(1.2, 0.8, 1.4),
            0.96,
            49.680_319_184_859_11,
        ),
        (
            HypParams::conjugate(0.5, 2.0, 0.4),
            0.999,
            16_322.503_734_391_059,
        ),
    ];
    for (p, y, want) in cases {
        let got = gauss_2f1(&p, y).unwrap();
        assert!(
            (got / want - 1.0).abs() < 1e-10,
            "{p:?} at {y}: {got} vs {want}"
        );
    }
}

/// Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)) for c−a−b > 0, approached from below.
#[test]
fn gauss_summation_limit() {
    let g = |z: Complex64| gamma(z).unwrap();
    for (p, s) in [
        (HypParams::real(0.3, 0.4, 1.9), 1e-12),
        (HypParams::real(-0.6, 0.9, 2.05), 1e-12),
        (HypParams::conjugate(0.25, 0.7, 1.1), 1e-30),
        (HypParams::conjugate(-0.5, 1.4, 0.2), 1e-40),
    ] {
        let (a, b, c) = (p.a(), p.b(), Complex64::new(p.c(), 0.0));
        let exact = (g(c) * g(c - a - b) / (g(c - a) * g(c - b))).re;
        let got = gauss_2f1_split(&p, 1.0 - s, s).unwrap();
        assert!((got / exact - 1.0).abs() < 1e-8, "{p:?}: {got} vs {exact}");
    }
}

#[test]
fn log_gamma_against_frozen_gamma_values() {
    let cases = [
        (
            (3.7, -2.2),
            (-1.885_026_013_041_872_9, -0.849_790_941_594_589_4),
        ),
        (
            (-4.3, 0.9),
            (0.004_827_446_093_602_250_6, -0.009_439_543_882_233_859),
        ),
        (
            (0.2, 15.0),
            (6.507_225_712_104_874e-11, 1.077_075_194_788_294_3e-12),
        ),
        (
            (12.5, 11.0),
            (-1_442_879.658_872_290_1, -476_996.726_298_970_6),
        ),
        (
            (-11.5, 3.0),
            (1.930_541_998_504_190_9e-12, 5.010_571_606_505_713e-12),
        ),
        (
            (0.3, 0.7),
            (0.309_686_256_743_749_16, -0.856_787_752_939_270_6),
        ),
    ];
    for ((re, im), (gre, gim)) in cases {
        let (lr, li) = complex_log_gamma(re, im).unwrap();
        let got = Complex64::new(lr, li).exp();
        let want = Complex64::new(gre, gim);
        assert!(
            (got - want).norm() / want.norm() < 1e-12,
            "Γ({re}+{im}i): {got} vs {want}"
        );
    }
}

#[test]
fn log_gamma_examples() {
    assert_eq!(complex_log_gamma(1.0, 0.0).unwrap(), (0.0, 0.0));
    let (re, im) = complex_log_gamma(0.5, 0.0).unwrap();
    assert!((re - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14 && im == 0.0);
    assert!(complex_log_gamma(-2.0, 0.0).is_err());
    // reflection Γ(z)Γ(1−z) = π/sin(πz)
    let z = Complex64::new(0.3, 0.7);
    let lhs = gamma(z).unwrap() * gamma(Complex64::new(1.0, 0.0) - z).unwrap();
    let rhs = std::f64::consts::PI / (z * std::f64::consts::PI).sin();
    assert!((lhs / rhs - 1.0).norm() < 1e-10);
}
