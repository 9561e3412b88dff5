//! Closed-form ground states. μ-branch states are the κ-branch forms at the
//! dual parameters (κ, μ) → (μ + 1/2, κ − 1/2), since W̃ equals W there.

use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, Branch, FamilyId, Params};
use crate::error::{Error, Result};
use crate::gridops::{check_inside, Grid, WaveFunction};
use crate::specfun::{bessel_k_scaled, gauss_2f1_split, HypParams};

/// Which ground state to build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundStateSpec {
    pub family: FamilyId,
    pub branch: Branch,
    /// 1, or 2 for the second independent solution of F3, F4 and F5.
    pub solution_index: u8,
    pub params: Params,
}

impl GroundStateSpec {
    pub fn new(family: FamilyId, branch: Branch, solution_index: u8, params: Params) -> Self {
        GroundStateSpec {
            family,
            branch,
            solution_index,
            params,
        }
    }

    /// Solution indices that exist for the family.
    pub fn solution_indices(family: FamilyId) -> &'static [u8] {
        match family {
            FamilyId::F3TrigRmLike | FamilyId::F4EckartLike | FamilyId::F5HypRmLike => &[1, 2],
            _ => &[1],
        }
    }
}

/// (φ, ξ)·e^{log} at one point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Sample {
    pub log: f64,
    pub phi: f64,
    pub xi: f64,
}

fn unavailable(what: &str) -> Error {
    Error::ClosedFormUnavailable(what.to_string())
}

/// Domain errors from the hypergeometric parameters mean the printed form
/// has a pole (c a non-positive integer) at these parameters.
fn hyp(p: &HypParams, y: f64, s: f64) -> Result<f64> {
    p.validate()
        .map_err(|_| unavailable(&format!("hypergeometric pole at c = {}", p.c())))?;
    gauss_2f1_split(p, y, s)
}

/// ln(1 + e^t) without overflow.
fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

/// ln cosh t.
fn ln_cosh(t: f64) -> f64 {
    let a = t.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

fn coulomb(k: f64, m: f64, w: f64, x: f64) -> Result<Sample> {
    let y = w * x / (2.0 * k + 1.0);
    if !(y > 0.0) {
        return Err(Error::Domain(format!(
            "Bessel argument {y} must be positive"
        )));
    }
    Ok(Sample {
        log: (k + 1.0) * y.ln() - y,
        phi: bessel_k_scaled((m + 1.0).abs(), y)?,
        xi: bessel_k_scaled(m.abs(), y)?,
    })
}

fn morse(p: &Params, x: f64) -> Result<Sample> {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let ln_y = m.ln() - l * x;
    let y = ln_y.exp();
    let nu = w / k + 0.5;
    Ok(Sample {
        log: (0.5 - k) * ln_y - y,
        phi: bessel_k_scaled(nu.abs(), y)?,
        xi: -bessel_k_scaled((nu - 1.0).abs(), y)?,
    })
}

/// y = (sin λx + 1)/2 and 1 − y, both without cancellation.
fn trig_arg(l: f64, x: f64) -> (f64, f64) {
    let t = FRAC_PI_4 - 0.5 * l * x;
    (t.cos().powi(2), t.sin().powi(2))
}

fn trig(sol: u8, k: f64, m: f64, w: f64, l: f64, x: f64) -> Result<Sample> {
    let (y, s) = trig_arg(l, x);
    let (ly, ls) = (y.ln(), s.ln());
    let half = (0.5 * (ly + ls)).exp();
    if sol == 1 {
        let p = HypParams::conjugate(0.0, w / k, 0.5 - m);
        let f = hyp(&p, y, s)?;
        let g = hyp(&p.raised(), y, s)?;
        Ok(Sample {
            log: 0.5 * (k - m) * ly + 0.5 * (k + m) * ls,
            phi: f,
            xi: 2.0 * w / (k * (2.0 * m - 1.0)) * half * g,
        })
    } else {
        let p = HypParams::conjugate(m + 0.5, -w / k, m + 1.5);
        let f = hyp(&p, y, s)?;
        let g = hyp(&p.raised(), y, s)?;
        let t = 2.0 * m + 1.0;
        let xi = -(t * k / (2.0 * w)) * (s / y).sqrt() * f
            - (k * k * t * t + 4.0 * w * w) / (2.0 * w * k * (2.0 * m + 3.0)) * half * g;
        Ok(Sample {
            log: 0.5 * (1.0 + k + m) * ly + 0.5 * (k + m) * ls,
            phi: f,
            xi,
        })
    }
}

fn eckart(sol: u8, k: f64, m: f64, w: f64, l: f64, x: f64) -> Result<Sample> {
    if sol != 1 {
        return Err(unavailable(
            "the second F4 ground state has no valid closed form; use the ODE construction",
        ));
    }
    let h = 0.5 * l * x;
    let y = h.tanh();
    let z = y * y;
    let ln_s = -2.0 * ln_cosh(h);
    let s = ln_s.exp();
    let (a, c) = (w / k, 0.5 - m);
    let p = HypParams::real(a, a + c, c);
    let f = hyp(&p, z, s)?;
    let g = hyp(&p.raised(), z, s)?;
    Ok(Sample {
        log: (w / k - k) * ln_s + (k - m) * y.ln(),
        phi: f,
        xi: -y * f + (a + c) / c * y * s * g,
    })
}

fn hyp_rm(sol: u8, p: &Params, x: f64) -> Result<Sample> {
    let (l, k, m, w) = (p.lambda, p.kappa, p.mu, p.omega);
    let t = 2.0 * l * x;
    let (ly, ls) = (-softplus(-t), -softplus(t));
    let (y, s) = (ly.exp(), ls.exp());
    let half = (0.5 * (ly + ls)).exp();
    let r = w / (2.0 * k);
    if sol == 1 {
        let hp = HypParams::conjugate(0.0, m, 0.5 + w / k);
        let f = hyp(&hp, y, s)?;
        let g = hyp(&hp.raised(), y, s)?;
        Ok(Sample {
            log: (-0.5 * k + r) * ly + (-0.5 * k - r) * ls,
            phi: f,
            xi: -(2.0 * m * k / (2.0 * w + k)) * half * g,
        })
    } else {
        let hp = HypParams::conjugate(0.5 - w / k, m, 1.5 - w / k);
        let f = hyp(&hp, y, s)?;
        let g = hyp(&hp.raised(), y, s)?;
        let xi = (2.0 * w - k) / (2.0 * k * m) * (s / y).sqrt() * f
            - ((k - 2.0 * w).powi(2) + 4.0 * m * m * k * k) / (2.0 * m * k * (3.0 * k - 2.0 * w))
                * half
                * g;
        Ok(Sample {
            log: (0.5 - 0.5 * k - r) * ly + (-0.5 * k - r) * ls,
            phi: f,
            xi,
        })
    }
}

/// Unnormalized ground state at x.
pub(crate) fn sample(spec: &GroundStateSpec, x: f64) -> Result<Sample> {
    let p = match spec.branch {
        Branch::KappaBranch => spec.params,
        Branch::MuBranch => catalog::dual_transform(&spec.params),
    };
    let (k, m, w, l) = (p.kappa, p.mu, p.omega, p.lambda);
    let sol = spec.solution_index;
    match spec.family {
        FamilyId::F1CoulombLike => coulomb(k, m, w, x),
        FamilyId::F2MorseLike => morse(&p, x),
        FamilyId::F3TrigRmLike => trig(sol, k, m, w, l, x),
        FamilyId::F4EckartLike => eckart(sol, k, m, w, l, x),
        FamilyId::F5HypRmLike => hyp_rm(sol, &p, x),
        f => Err(unavailable(&format!("{f} has no closed-form ground state"))),
    }
}

fn check_spec(spec: &GroundStateSpec) -> Result<()> {
    let f = spec.family;
    catalog::validate_params(f, &spec.params)?;
    if !catalog::defined_branches(f).contains(&spec.branch) {
        return Err(Error::Branch(format!(
            "{} is not defined for {f}",
            spec.branch
        )));
    }
    if !GroundStateSpec::solution_indices(f).contains(&spec.solution_index) {
        return Err(Error::Param(format!(
            "{f} has no ground state with index {}",
            spec.solution_index
        )));
    }
    if !catalog::branch_availability(f, &spec.params)?.contains(&spec.branch) {
        return Err(Error::Branch(format!(
            "{} of {f} has no normalizable ground state at {:?}",
            spec.branch, spec.params
        )));
    }
    Ok(())
}

/// Builds a normalized wavefunction from per-node scaled samples.
pub(crate) fn assemble(grid: &Grid, samples: &[Sample]) -> Result<WaveFunction> {
    let amp = |s: &Sample| s.log + s.phi.abs().max(s.xi.abs()).ln();
    let top = samples
        .iter()
        .map(amp)
        .filter(|v| v.is_finite())
        .fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return Err(Error::Normalization(
            "ground state vanishes on the grid".into(),
        ));
    }
    let mut w = WaveFunction::zeros(grid);
    for (i, s) in samples.iter().enumerate() {
        let e = (s.log - top).exp();
        let v = [s.phi * e, s.xi * e];
        if !(v[0].is_finite() && v[1].is_finite()) {
            return Err(Error::Normalization(format!(
                "non-finite sample at x = {}",
                grid.nodes()[i]
            )));
        }
        w.set(i, v);
    }
    w.normalized()
}

/// Normalized closed-form ground state on the grid and its energy −c.
pub fn ground_state_closed_form(
    spec: &GroundStateSpec,
    grid: &Grid,
) -> Result<(WaveFunction, f64)> {
    check_spec(spec)?;
    let w = catalog::superpotential(spec.family, spec.branch, &spec.params)?;
    check_inside(&w, grid)?;
    let samples = grid
        .nodes()
        .iter()
        .map(|&x| sample(spec, x))
        .collect::<Result<Vec<_>>>()?;
    let psi = assemble(grid, &samples)?;
    let energy = -catalog::factorization_constant(spec.family, spec.branch, &spec.params)?;
    Ok((psi, energy))
}
