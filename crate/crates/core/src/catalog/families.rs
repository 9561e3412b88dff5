//! Closed forms of W, W̃ and V̂ with their x-derivatives.

use std::f64::consts::FRAC_PI_2;

use super::rules::validate_params;
use super::{pauli, Branch, FamilyId, Layout, MatrixFunction, Params};
use crate::error::{Error, Result};
use crate::mat2::Mat2;

type Pair = (Mat2, Mat2);

/// Sub-interval where the closed forms are evaluated for sampling checks:
/// away from singular walls and before exponentials grow large.
fn window(f: FamilyId, p: &Params) -> (f64, f64) {
    use FamilyId::*;
    let l = p.lambda;
    match f {
        F0Oscillator => {
            let w = 5.0 / p.omega.abs().sqrt().max(1e-3);
            (-w, w)
        }
        F1CoulombLike | S1CoulombScalar => (0.05, 40.0),
        F2MorseLike => (-3.0 / l, 12.0 / l),
        F3TrigRmLike | S2TrigRmScalar => {
            let e = (FRAC_PI_2 - 0.05) / l;
            (-e, e)
        }
        F4EckartLike | S3EckartScalar => (0.05 / l, 12.0 / l),
        F5HypRmLike | S4HypRmScalar => (-12.0 / l, 12.0 / l),
        F6Extended => (-0.95 * p.c_ext, 0.95 * p.c_ext),
    }
}

fn f1_kappa(p: Params, x: f64) -> Pair {
    let (k, m, w) = (p.kappa, p.mu, p.omega);
    let val = pauli(
        -(2.0 * k + 1.0) / (2.0 * x),
        w / (2.0 * k + 1.0),
        (2.0 * m + 1.0) / (2.0 * x),
    );
    let x2 = x * x;
    let der = pauli(
        (2.0 * k + 1.0) / (2.0 * x2),
        0.0,
        -(2.0 * m + 1.0) / (2.0 * x2),
    );
    (val, der)
}

fn f1_mu(p: Params, x: f64) -> Pair {
    let (k, m, w) = (p.kappa, p.mu, p.omega);
    let val = pauli(-(m + 1.0) / x, w / (2.0 * (m + 1.0)), k / x);
    let x2 = x * x;
    (val, pauli((m + 1.0) / x2, 0.0, -k / x2))
}

fn f2_kappa(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let e = (-l * x).exp();
    (
        pauli(-l * k, l * m * e, -l * w / k),
        pauli(0.0, -l * l * m * e, 0.0),
    )
}

fn f3_kappa(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let t = (l * x).tan();
    let s = 1.0 / (l * x).cos();
    (
        pauli(l * k * t, l * w / k, l * m * s),
        pauli(l * l * k * s * s, 0.0, l * l * m * s * t),
    )
}

fn f3_mu(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let t = (l * x).tan();
    let s = 1.0 / (l * x).cos();
    let h = 0.5 * l;
    let val = pauli(
        h * (2.0 * m + 1.0) * t,
        h * 4.0 * w / (2.0 * m + 1.0),
        h * (2.0 * k - 1.0) * s,
    );
    let der = pauli(
        h * l * (2.0 * m + 1.0) * s * s,
        0.0,
        h * l * (2.0 * k - 1.0) * s * t,
    );
    (val, der)
}

fn f4_kappa(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let ct = 1.0 / (l * x).tanh();
    let cs = 1.0 / (l * x).sinh();
    (
        pauli(-l * k * ct, -l * w / k, l * m * cs),
        pauli(l * l * k * cs * cs, 0.0, -l * l * m * cs * ct),
    )
}

fn f4_mu(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let ct = 1.0 / (l * x).tanh();
    let cs = 1.0 / (l * x).sinh();
    let h = 0.5 * l;
    let val = pauli(
        -h * (2.0 * m + 1.0) * ct,
        -h * 4.0 * w / (2.0 * m + 1.0),
        h * (2.0 * k - 1.0) * cs,
    );
    let der = pauli(
        h * l * (2.0 * m + 1.0) * cs * cs,
        0.0,
        -h * l * (2.0 * k - 1.0) * cs * ct,
    );
    (val, der)
}

fn f5_kappa(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let th = (l * x).tanh();
    let sh = 1.0 / (l * x).cosh();
    (
        pauli(-l * k * th, l * m * sh, -l * w / k),
        pauli(-l * l * k * sh * sh, -l * l * m * sh * th, 0.0),
    )
}

fn f6_kappa(p: Params, x: f64) -> Pair {
    let (k, w, c) = (p.kappa, p.omega, p.c_ext);
    let g = k + 0.5;
    let d = c * c - x * x;
    let val = pauli(g * x / d, w / (2.0 * k + 1.0), -g * c / d);
    let der = pauli(
        g * (c * c + x * x) / (d * d),
        0.0,
        -g * 2.0 * c * x / (d * d),
    );
    (val, der)
}

fn f0(p: Params, x: f64) -> Pair {
    let (m, w) = (p.mu, p.omega);
    (pauli(w * x, 0.0, m), pauli(w, 0.0, 0.0))
}

fn from_pair(f: FamilyId, p: &Params, eval: fn(Params, f64) -> Pair) -> MatrixFunction {
    let q = *p;
    MatrixFunction::new(
        move |x| eval(q, x).0,
        move |x| eval(q, x).1,
        f.domain(p),
        window(f, p),
    )
}

/// W (KappaBranch) or W̃ (MuBranch) of a matrix family.
pub fn superpotential(f: FamilyId, b: Branch, p: &Params) -> Result<MatrixFunction> {
    validate_params(f, p)?;
    use FamilyId::*;
    let eval: fn(Params, f64) -> Pair = match (f, b) {
        (F0Oscillator, Branch::KappaBranch) => f0,
        (F1CoulombLike, Branch::KappaBranch) => f1_kappa,
        (F1CoulombLike, Branch::MuBranch) => f1_mu,
        (F2MorseLike, Branch::KappaBranch) => f2_kappa,
        (F3TrigRmLike, Branch::KappaBranch) => f3_kappa,
        (F3TrigRmLike, Branch::MuBranch) => f3_mu,
        (F4EckartLike, Branch::KappaBranch) => f4_kappa,
        (F4EckartLike, Branch::MuBranch) => f4_mu,
        (F5HypRmLike, Branch::KappaBranch) => f5_kappa,
        (F6Extended, Branch::KappaBranch) => f6_kappa,
        (f, _) if f.is_scalar_reference() => {
            return Err(Error::Branch(format!(
                "{f} is a scalar reference without a superpotential"
            )))
        }
        (f, b) => return Err(Error::Branch(format!("{b} is not defined for {f}"))),
    };
    Ok(from_pair(f, p, eval))
}

fn v_f0(p: Params, x: f64) -> Pair {
    let (m, w) = (p.mu, p.omega);
    (
        pauli(w * w * x * x, 0.0, 2.0 * w * m * x),
        pauli(2.0 * w * w * x, 0.0, 2.0 * w * m),
    )
}

fn v_f1(p: Params, x: f64) -> Pair {
    let (k, m, w) = (p.kappa, p.mu, p.omega);
    let a = m * (m + 1.0) + k * k;
    let b = -k * (2.0 * m + 1.0);
    let x2 = x * x;
    let x3 = x2 * x;
    (
        pauli(a / x2, -w / x, b / x2),
        pauli(-2.0 * a / x3, w / x2, -2.0 * b / x3),
    )
}

fn v_f2(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let e = (-l * x).exp();
    let l2 = l * l;
    let val = pauli(
        l2 * m * m * e * e,
        -l2 * (2.0 * k - 1.0) * m * e,
        2.0 * l2 * w,
    );
    let der = pauli(
        -2.0 * l2 * l * m * m * e * e,
        l2 * l * (2.0 * k - 1.0) * m * e,
        0.0,
    );
    (val, der)
}

fn v_f3(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let t = (l * x).tan();
    let s = 1.0 / (l * x).cos();
    let a = k * (k - 1.0) + m * m;
    let l2 = l * l;
    let l3 = l2 * l;
    let val = pauli(
        l2 * a * s * s,
        2.0 * l2 * w * t,
        l2 * m * (2.0 * k - 1.0) * s * t,
    );
    let der = pauli(
        2.0 * l3 * a * s * s * t,
        2.0 * l3 * w * s * s,
        l3 * m * (2.0 * k - 1.0) * s * (t * t + s * s),
    );
    (val, der)
}

fn v_f4(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let ct = 1.0 / (l * x).tanh();
    let cs = 1.0 / (l * x).sinh();
    let a = k * (k - 1.0) + m * m;
    let l2 = l * l;
    let l3 = l2 * l;
    let val = pauli(
        l2 * a * cs * cs,
        2.0 * l2 * w * ct,
        l2 * m * (1.0 - 2.0 * k) * ct * cs,
    );
    let der = pauli(
        -2.0 * l3 * a * cs * cs * ct,
        -2.0 * l3 * w * cs * cs,
        -l3 * m * (1.0 - 2.0 * k) * cs * (cs * cs + ct * ct),
    );
    (val, der)
}

fn v_f5(p: Params, x: f64) -> Pair {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let th = (l * x).tanh();
    let sh = 1.0 / (l * x).cosh();
    let b = m * m - k * (k - 1.0);
    let l2 = l * l;
    let l3 = l2 * l;
    let val = pauli(
        l2 * b * sh * sh,
        -l2 * m * (2.0 * k - 1.0) * sh * th,
        2.0 * l2 * w * th,
    );
    let der = pauli(
        -2.0 * l3 * b * sh * sh * th,
        -l3 * m * (2.0 * k - 1.0) * sh * (sh * sh - th * th),
        2.0 * l3 * w * sh * sh,
    );
    (val, der)
}

fn v_f6(p: Params, x: f64) -> Pair {
    let (k, w, c) = (p.kappa, p.omega, p.c_ext);
    let q = (4.0 * k * k - 1.0) / 4.0;
    let d = c * c - x * x;
    let d2 = d * d;
    let d3 = d2 * d;
    let n0 = x * x + c * c;
    let val = pauli(q * n0 / d2, w * x / d, -q * 2.0 * c * x / d2);
    let der = pauli(
        q * (2.0 * x / d2 + n0 * 4.0 * x / d3),
        w * n0 / d2,
        q * (-2.0 * c / d2 - 8.0 * c * x * x / d3),
    );
    (val, der)
}

// Scalar references: diagonal pairs, κ carries l + 1/2 (S1) or r (S2–S4).

fn v_s1(p: Params, x: f64) -> Pair {
    let ll = p.kappa * p.kappa - 0.25;
    let w = p.omega;
    let x2 = x * x;
    (
        pauli(ll / x2, 0.0, -w / x),
        pauli(-2.0 * ll / (x2 * x), 0.0, w / x2),
    )
}

fn v_s2(p: Params, x: f64) -> Pair {
    let (l, r, w) = (p.lambda, p.kappa, p.omega);
    let t = (l * x).tan();
    let s = 1.0 / (l * x).cos();
    let rr = r * (r - 1.0);
    let l2 = l * l;
    (
        pauli(l2 * rr * s * s, 0.0, 2.0 * l2 * w * t),
        pauli(2.0 * l2 * l * rr * s * s * t, 0.0, 2.0 * l2 * l * w * s * s),
    )
}

fn v_s3(p: Params, x: f64) -> Pair {
    let (l, r, w) = (p.lambda, p.kappa, p.omega);
    let ct = 1.0 / (l * x).tanh();
    let cs = 1.0 / (l * x).sinh();
    let rr = r * (r - 1.0);
    let l2 = l * l;
    (
        pauli(l2 * rr * cs * cs, 0.0, 2.0 * l2 * w * ct),
        pauli(
            -2.0 * l2 * l * rr * cs * cs * ct,
            0.0,
            -2.0 * l2 * l * w * cs * cs,
        ),
    )
}

fn v_s4(p: Params, x: f64) -> Pair {
    let (l, r, w) = (p.lambda, p.kappa, p.omega);
    let th = (l * x).tanh();
    let sh = 1.0 / (l * x).cosh();
    let rr = r * (r - 1.0);
    let l2 = l * l;
    (
        pauli(l2 * rr * sh * sh, 0.0, 2.0 * l2 * w * th),
        pauli(
            -2.0 * l2 * l * rr * sh * sh * th,
            0.0,
            2.0 * l2 * l * w * sh * sh,
        ),
    )
}

/// The constant-free potential V̂. Scalar references come back as a
/// diagonal direct sum.
pub fn potential(f: FamilyId, p: &Params) -> Result<MatrixFunction> {
    validate_params(f, p)?;
    use FamilyId::*;
    let (eval, layout): (fn(Params, f64) -> Pair, Layout) = match f {
        F0Oscillator => (v_f0, Layout::Coupled),
        F1CoulombLike => (v_f1, Layout::Coupled),
        F2MorseLike => (v_f2, Layout::Coupled),
        F3TrigRmLike => (v_f3, Layout::Coupled),
        F4EckartLike => (v_f4, Layout::Coupled),
        F5HypRmLike => (v_f5, Layout::Coupled),
        F6Extended => (v_f6, Layout::Coupled),
        S1CoulombScalar => (v_s1, Layout::DirectSum),
        S2TrigRmScalar => (v_s2, Layout::DirectSum),
        S3EckartScalar => (v_s3, Layout::DirectSum),
        S4HypRmScalar => (v_s4, Layout::DirectSum),
    };
    Ok(from_pair(f, p, eval).with_layout(layout))
}
