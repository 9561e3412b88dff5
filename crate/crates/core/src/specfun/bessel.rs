//! Modified Bessel functions I_ν and K_ν of real order and positive argument.
//!
//! K is computed for the reduced order |μ| ≤ 1/2 by Temme's series (x < 2),
//! Steed's continued fraction (2 ≤ x ≤ 30) or the Hankel asymptotic series
//! (x > 30), then carried up to ν by forward recurrence. I follows from the
//! continued fraction for I′/I together with the Wronskian.

use std::f64::consts::PI;

use super::gamma::{rgamma1p_small, temme_gammas};
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-30;
const MAXIT: usize = 100_000;
const TEMME_MAX: f64 = 2.0;
const ASYMPTOTIC_MIN: f64 = 30.0;
/// Smallest argument for which K is still representable for the orders in use.
pub const MIN_ARG: f64 = 1e-300;

/// I and K with their derivatives, scaled as `I·e^{−x}` and `K·e^{x}`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledIK {
    pub i: f64,
    pub ip: f64,
    pub k: f64,
    pub kp: f64,
}

fn check_arg(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "Bessel argument must be positive, got {x}"
        )));
    }
    if x < MIN_ARG {
        return Err(Error::Domain(format!("Bessel argument {x:e} underflows")));
    }
    Ok(())
}

/// K_μ(x)·e^x and K_{μ+1}(x)·e^x for |μ| ≤ 1/2 by Temme's series.
fn temme_k(xmu: f64, x: f64) -> Result<(f64, f64)> {
    let xmu2 = xmu * xmu;
    let x2 = 0.5 * x;
    let pimu = PI * xmu;
    let fact = if pimu.abs() < EPS {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -x2.ln();
    let e = xmu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2) = temme_gammas(xmu);
    let gampl = rgamma1p_small(xmu);
    let gammi = rgamma1p_small(-xmu);
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    let mut converged = false;
    for i in 1..MAXIT {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - xmu2);
        c *= dd / fi;
        p /= fi - xmu;
        q /= fi + xmu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("Temme series for K".into()));
    }
    let scale = x.exp();
    Ok((sum * scale, sum1 * 2.0 / x * scale))
}

/// Steed's continued fraction for K_μ·e^x and K_{μ+1}·e^x, |μ| ≤ 1/2.
fn steed_k(xmu: f64, x: f64) -> Result<(f64, f64)> {
    let xmu2 = xmu * xmu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - xmu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..MAXIT {
        a -= 2.0 * (i - 1) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("continued fraction for K".into()));
    }
    let h = a1 * h;
    let kmu = (PI / (2.0 * x)).sqrt() / s;
    Ok((kmu, kmu * (xmu + x + 0.5 - h) / x))
}

/// Hankel expansion of K_m(x)·e^x for large x.
fn asymptotic_k_scaled(m: f64, x: f64) -> f64 {
    let four_m2 = 4.0 * m * m;
    let mut term = 1.0_f64;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (four_m2 - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    (PI / (2.0 * x)).sqrt() * sum
}

/// Scaled I_ν, I′_ν, K_ν, K′_ν for ν ≥ 0 and x > 0.
pub fn bessel_ik_scaled(nu: f64, x: f64) -> Result<ScaledIK> {
    check_arg(x)?;
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::Domain(format!(
            "order must be finite and non-negative, got {nu}"
        )));
    }
    let nl = (nu + 0.5).floor() as usize;
    let xmu = nu - nl as f64;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // Continued fraction for I′_ν/I_ν (modified Lentz).
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 1..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence("continued fraction for I'/I".into()));
    }

    // Downward recurrence to the reduced order, unnormalized.
    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let ril1 = ril;
    let rip1 = ripl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    let (mut kmu, mut k1) = if x < TEMME_MAX {
        temme_k(xmu, x)?
    } else if x <= ASYMPTOTIC_MIN {
        steed_k(xmu, x)?
    } else {
        (
            asymptotic_k_scaled(xmu, x),
            asymptotic_k_scaled(xmu + 1.0, x),
        )
    };

    let kmup = xmu * xi * kmu - k1;
    let rimu = xi / (f * kmu - kmup);
    let i = rimu * ril1 / ril;
    let ip = rimu * rip1 / ril;
    for step in 1..=nl {
        let ktemp = (xmu + step as f64) * xi2 * k1 + kmu;
        kmu = k1;
        k1 = ktemp;
    }
    Ok(ScaledIK {
        i,
        ip,
        k: kmu,
        kp: nu * xi * kmu - k1,
    })
}

/// K_ν(x)·e^x. Symmetric in ν.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_ik_scaled(nu.abs(), x)?.k)
}

/// K_ν(x). Symmetric in ν.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    Ok(bessel_k_scaled(nu, x)? * (-x).exp())
}

/// (K_ν(x), K′_ν(x)).
pub fn bessel_k_with_derivative(nu: f64, x: f64) -> Result<(f64, f64)> {
    let r = bessel_ik_scaled(nu.abs(), x)?;
    let s = (-x).exp();
    Ok((r.k * s, r.kp * s))
}

/// I_ν(x) for x ≥ 0, using I_{−ν} = I_ν + (2/π) sin(νπ) K_ν for negative order.
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    if !nu.is_finite() {
        return Err(Error::Domain("order must be finite".into()));
    }
    let integer_order = nu == nu.round();
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 || integer_order {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("I_{nu}(0) is infinite")))
        };
    }
    let r = bessel_ik_scaled(nu.abs(), x)?;
    let ipos = r.i * x.exp();
    if nu >= 0.0 || integer_order {
        return Ok(ipos);
    }
    Ok(ipos + 2.0 / PI * (nu.abs() * PI).sin() * r.k * (-x).exp())
}

/// (I_ν(x), I′_ν(x), K_ν(x), K′_ν(x)) for ν ≥ 0.
pub fn bessel_ik(nu: f64, x: f64) -> Result<(f64, f64, f64, f64)> {
    let r = bessel_ik_scaled(nu, x)?;
    let up = x.exp();
    let down = (-x).exp();
    Ok((r.i * up, r.ip * up, r.k * down, r.kp * down))
}
