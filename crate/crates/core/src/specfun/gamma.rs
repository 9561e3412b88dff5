//! Gamma-family functions on the complex plane.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Taylor coefficients of 1/Γ(1+x) about x = 0.
const RGAMMA1P: [f64; 27] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_9,
    -0.042_002_635_034_095_24,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_34,
    -0.009_621_971_527_876_974,
    0.007_218_943_246_663_1,
    -0.001_165_167_591_859_065,
    -0.000_215_241_674_114_951,
    0.000_128_050_282_388_116_2,
    -2.013_485_478_078_824e-5,
    -1.250_493_482_142_670_7e-6,
    1.133_027_231_981_695_9e-6,
    -2.056_338_416_977_607e-7,
    6.116_095_104_481_416e-9,
    5.002_007_644_469_223e-9,
    -1.181_274_570_487_020_1e-9,
    1.043_426_711_691_100_5e-10,
    7.782_263_439_905_071e-12,
    -3.696_805_618_642_206e-12,
    5.100_370_287_454_476e-13,
    -2.058_326_053_566_507e-14,
    -5.348_122_539_423_018e-15,
    1.226_778_628_238_260_8e-15,
    -1.181_259_301_697_458_8e-16,
    1.186_692_254_751_600_3e-18,
];

/// 1/Γ(1+x) for |x| ≤ 1/2 by its Taylor series.
pub(crate) fn rgamma1p_small(x: f64) -> f64 {
    RGAMMA1P.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// The pair (Γ₁, Γ₂) of Temme's method:
/// Γ₁ = (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ), Γ₂ = (1/Γ(1−μ) + 1/Γ(1+μ))/2, |μ| ≤ 1/2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64) {
    let m2 = mu * mu;
    let mut odd = 0.0;
    let mut even = 0.0;
    // Horner in μ² over the odd and even coefficient subsequences.
    for k in (0..RGAMMA1P.len()).rev() {
        if k % 2 == 1 {
            odd = odd * m2 + RGAMMA1P[k];
        } else {
            even = even * m2 + RGAMMA1P[k];
        }
    }
    (-odd, even)
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Stirling series for ln Γ(w), valid for Re w ≥ 15.
fn ln_gamma_stirling(w: Complex64) -> Complex64 {
    const B: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for &b in B.iter().rev() {
        series = series * inv2 + b;
    }
    (w - 0.5) * w.ln() - w + LN_SQRT_2PI + series * inv
}

/// Principal branch of ln Γ(z).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Domain(format!("ln Γ has a pole at {}", z.re)));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("ln Γ of a non-finite argument".into()));
    }
    if z.re < 0.5 {
        // Reflection: ln Γ(z) = ln π − ln sin(πz) − ln Γ(1−z).
        let s = (z * PI).sin();
        let lg = ln_gamma(Complex64::new(1.0, 0.0) - z)?;
        let mut out = Complex64::new(PI.ln(), 0.0) - s.ln() - lg;
        if z.im == 0.0 {
            // Keep the real axis real; the sign of Γ lives in the phase π·k.
            out.im = if s.re < 0.0 { PI } else { 0.0 };
        }
        return Ok(out);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    Ok(ln_gamma_stirling(w) - shift)
}

/// Γ(z) for complex z.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// 1/Γ(z), zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::new(0.0, 0.0);
    }
    match ln_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// Digamma ψ(z) = Γ′(z)/Γ(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Domain(format!("ψ has a pole at {}", z.re)));
    }
    if z.re < 0.5 {
        let cot = (z * PI).cos() / (z * PI).sin();
        return Ok(digamma(Complex64::new(1.0, 0.0) - z)? - cot * PI);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 15.0 {
        shift += w.inv();
        w += 1.0;
    }
    const B: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32_760.0,
        1.0 / 12.0,
    ];
    let inv2 = (w * w).inv();
    let mut series = Complex64::new(0.0, 0.0);
    for &b in B.iter().rev() {
        series = series * inv2 + b;
    }
    Ok(w.ln() - w.inv() * 0.5 - series * inv2 - shift)
}

/// Real Γ(x).
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_factorials() {
        let mut f = 1.0;
        for n in 1..20 {
            let g = gamma_real(n as f64).unwrap();
            assert!((g / f - 1.0).abs() < 1e-14, "Γ({n})");
            f *= n as f64;
        }
    }

    #[test]
    fn half_integer_values() {
        let g = ln_gamma(c(0.5, 0.0)).unwrap();
        assert!((g.re - PI.sqrt().ln()).abs() < 1e-14);
        assert_eq!(g.im, 0.0);
        let g = gamma_real(-0.5).unwrap();
        assert!((g / (-2.0 * PI.sqrt()) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn poles_rejected() {
        assert!(ln_gamma(c(0.0, 0.0)).is_err());
        assert!(ln_gamma(c(-3.0, 0.0)).is_err());
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn recurrence_in_complex_plane() {
        for &(re, im) in &[(0.3, 0.7), (-2.4, 1.1), (7.5, -3.0), (0.01, 12.0)] {
            let z = c(re, im);
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-13, "z = {z}");
        }
    }

    #[test]
    fn temme_pair_matches_direct_gamma() {
        for &mu in &[-0.5, -0.31, 0.12, 0.45] {
            let (g1, g2) = temme_gammas(mu);
            let gm = 1.0 / gamma_real(1.0 - mu).unwrap();
            let gp = 1.0 / gamma_real(1.0 + mu).unwrap();
            assert!((g1 - (gm - gp) / (2.0 * mu)).abs() < 1e-13);
            assert!((g2 - 0.5 * (gm + gp)).abs() < 1e-14);
            assert!((rgamma1p_small(mu) - gp).abs() < 1e-14);
        }
        let (g1, _) = temme_gammas(0.0);
        assert!((g1 + 0.577_215_664_901_532_9).abs() < 1e-16);
    }

    #[test]
    fn digamma_known_values() {
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap().re + euler).abs() < 1e-15);
        let half = digamma(c(0.5, 0.0)).unwrap().re;
        assert!((half + euler + 2.0 * 2f64.ln()).abs() < 1e-14);
        // ψ(z+1) = ψ(z) + 1/z off the real axis
        let z = c(-1.3, 0.8);
        let d = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
        assert!(d.norm() < 1e-13);
    }
}
