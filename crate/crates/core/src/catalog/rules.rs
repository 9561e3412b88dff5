//! Parameter validity, branch availability, level counts, constants and
//! closed-form energies.

use serde::{Deserialize, Serialize};

use super::{Branch, FamilyId, Params};
use crate::error::{Error, Result};

/// Number of bound levels on a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelCount {
    Bounded(usize),
    Unbounded,
}

impl LevelCount {
    pub fn allows(self, n: usize) -> bool {
        match self {
            LevelCount::Bounded(k) => n < k,
            LevelCount::Unbounded => true,
        }
    }

    /// min(count, cap).
    pub fn capped(self, cap: usize) -> usize {
        match self {
            LevelCount::Bounded(k) => k.min(cap),
            LevelCount::Unbounded => cap,
        }
    }
}

/// Number of integers n ≥ 0 with n < bound.
fn count_below(bound: f64) -> usize {
    if bound <= 0.0 {
        0
    } else {
        bound.ceil() as usize
    }
}

fn require(cond: bool, f: FamilyId, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Param(format!("{f}: {what}")))
    }
}

/// Checks the family's sign and finiteness rules.
pub fn validate_params(f: FamilyId, p: &Params) -> Result<()> {
    let all_finite = [p.lambda, p.kappa, p.mu, p.omega, p.c_ext]
        .iter()
        .all(|v| v.is_finite());
    require(all_finite, f, "parameters must be finite")?;
    require(p.lambda > 0.0, f, "λ must be positive")?;
    use FamilyId::*;
    match f {
        F0Oscillator => require(p.omega > 0.0, f, "ω must be positive"),
        F1CoulombLike => {
            require(p.mu > -0.5, f, "μ must exceed −1/2")?;
            require(p.omega > 0.0, f, "ω must be positive")?;
            require(2.0 * p.kappa + 1.0 != 0.0, f, "2κ+1 must be non-zero")
        }
        F2MorseLike | F3TrigRmLike | F5HypRmLike => {
            require(p.mu > 0.0, f, "μ must be positive")?;
            require(p.omega > 0.0, f, "ω must be positive")?;
            require(p.kappa != 0.0, f, "κ must be non-zero")
        }
        F4EckartLike => {
            require(p.mu < 0.0, f, "μ must be negative")?;
            require(p.omega > 0.0, f, "ω must be positive")?;
            require(p.kappa != 0.0, f, "κ must be non-zero")
        }
        F6Extended => {
            require(p.c_ext > 0.0, f, "c must be positive")?;
            require(p.omega > 0.0, f, "ω must be positive")?;
            require(2.0 * p.kappa + 1.0 != 0.0, f, "2κ+1 must be non-zero")
        }
        S1CoulombScalar => require(p.omega > 0.0, f, "ω must be positive"),
        S2TrigRmScalar | S3EckartScalar | S4HypRmScalar => {
            require(p.omega >= 0.0, f, "ω must be non-negative")
        }
    }
}

/// Branches for which a superpotential is defined, regardless of normalizability.
pub fn defined_branches(f: FamilyId) -> Vec<Branch> {
    if f.is_scalar_reference() {
        Vec::new()
    } else if f.has_mu_branch() {
        vec![Branch::KappaBranch, Branch::MuBranch]
    } else {
        vec![Branch::KappaBranch]
    }
}

/// Branches with a normalizable ground state.
pub fn branch_availability(f: FamilyId, p: &Params) -> Result<Vec<Branch>> {
    validate_params(f, p)?;
    let (k, m, w) = (p.kappa, p.mu, p.omega);
    use FamilyId::*;
    let (kappa, mu) = match f {
        F0Oscillator => (true, false),
        F1CoulombLike => (
            k - m > 0.0 && k > 0.0,
            (k >= 0.0 && k - m < 1.0) || (k < 0.0 && k + m > 1.0),
        ),
        F2MorseLike | F5HypRmLike => (k < 0.0 && k * k > w, false),
        F3TrigRmLike => (k - m > 0.0 && k + m > 0.0, k + m > 0.0 && k - m < 1.0),
        F4EckartLike => {
            let tm = 2.0 * m + 1.0;
            (
                k - m > 0.0 && k < 0.0 && k * k > w,
                m < -0.5 && tm * tm > 4.0 * w && k - m < 1.0,
            )
        }
        F6Extended => (k > -0.5, false),
        S1CoulombScalar | S2TrigRmScalar | S3EckartScalar | S4HypRmScalar => (false, false),
    };
    let mut out = Vec::new();
    if kappa {
        out.push(Branch::KappaBranch);
    }
    if mu {
        out.push(Branch::MuBranch);
    }
    Ok(out)
}

fn require_available(f: FamilyId, b: Branch, p: &Params) -> Result<()> {
    if branch_availability(f, p)?.contains(&b) {
        Ok(())
    } else {
        Err(Error::Branch(format!(
            "{b} has no normalizable ground state for {f} at {p:?}"
        )))
    }
}

fn require_defined(f: FamilyId, b: Branch) -> Result<()> {
    if defined_branches(f).contains(&b) {
        Ok(())
    } else {
        Err(Error::Branch(format!("{b} is not defined for {f}")))
    }
}

/// How many levels n = 0, 1, … exist on the branch.
pub fn admissible_levels(f: FamilyId, b: Branch, p: &Params) -> Result<LevelCount> {
    require_available(f, b, p)?;
    let root = p.omega.sqrt();
    use FamilyId::*;
    Ok(match (f, b) {
        (F2MorseLike | F5HypRmLike | F4EckartLike, Branch::KappaBranch) => {
            LevelCount::Bounded(count_below(p.kappa.abs() - root))
        }
        (F4EckartLike, Branch::MuBranch) => {
            LevelCount::Bounded(count_below(p.mu.abs() - root - 0.5))
        }
        _ => LevelCount::Unbounded,
    })
}

/// (κ, μ) → (μ + 1/2, κ − 1/2).
pub fn dual_transform(p: &Params) -> Params {
    Params {
        kappa: p.mu + 0.5,
        mu: p.kappa - 0.5,
        ..*p
    }
}

/// Parameters with the branch's shift variable advanced by n.
pub fn shifted(p: &Params, b: Branch, n: f64) -> Params {
    match b {
        Branch::KappaBranch => Params {
            kappa: p.kappa + n,
            ..*p
        },
        Branch::MuBranch => Params { mu: p.mu + n, ..*p },
    }
}

/// N = n + κ (KappaBranch) or n + μ + 1/2 (MuBranch).
pub fn spectral_parameter(b: Branch, p: &Params, n: usize) -> f64 {
    match b {
        Branch::KappaBranch => n as f64 + p.kappa,
        Branch::MuBranch => n as f64 + p.mu + 0.5,
    }
}

fn kappa_constant(f: FamilyId, p: &Params) -> f64 {
    let (l2, k, w) = (p.lambda * p.lambda, p.kappa, p.omega);
    use FamilyId::*;
    match f {
        F0Oscillator => p.mu * p.mu - w,
        F1CoulombLike | F6Extended => w * w / ((2.0 * k + 1.0) * (2.0 * k + 1.0)),
        F2MorseLike | F4EckartLike | F5HypRmLike => l2 * (k * k + w * w / (k * k)),
        F3TrigRmLike => l2 * (w * w / (k * k) - k * k),
        _ => f64::NAN,
    }
}

/// c with W² − W′ = V̂ + c·I on the given branch.
///
/// On MuBranch these are the values obtained by direct evaluation of
/// W̃² − W̃′ − V̂; see [`printed_mu_constant`] for the printed variant.
pub fn factorization_constant(f: FamilyId, b: Branch, p: &Params) -> Result<f64> {
    validate_params(f, p)?;
    require_defined(f, b)?;
    Ok(match b {
        Branch::KappaBranch => kappa_constant(f, p),
        Branch::MuBranch => {
            let (l2, m, w) = (p.lambda * p.lambda, p.mu, p.omega);
            let t = 2.0 * m + 1.0;
            match f {
                FamilyId::F1CoulombLike => w * w / (4.0 * (m + 1.0) * (m + 1.0)),
                FamilyId::F3TrigRmLike => l2 * (4.0 * w * w / (t * t) - t * t / 4.0),
                FamilyId::F4EckartLike => l2 * (t * t / 4.0 + 4.0 * w * w / (t * t)),
                _ => unreachable!("μ-branch checked above"),
            }
        }
    })
}

/// The μ-branch constant λ²(±(2μ+1)²/4 + 4ω²/(2μ+1)²) with the sign
/// assignment as it is usually quoted: "+" for F3 and "−" for F4.
/// Direct evaluation gives the opposite assignment.
pub fn printed_mu_constant(f: FamilyId, p: &Params) -> Option<f64> {
    let (l2, w) = (p.lambda * p.lambda, p.omega);
    let t = 2.0 * p.mu + 1.0;
    let sign = match f {
        FamilyId::F3TrigRmLike => 1.0,
        FamilyId::F4EckartLike => -1.0,
        _ => return None,
    };
    Some(l2 * (sign * t * t / 4.0 + 4.0 * w * w / (t * t)))
}

/// c_q − c_{q+1}, the constant of the shape-invariance relation.
/// For the oscillator (no parameter step) it is 2ω.
pub fn shift_constant(f: FamilyId, b: Branch, p: &Params) -> Result<f64> {
    if f == FamilyId::F0Oscillator {
        validate_params(f, p)?;
        return Ok(2.0 * p.omega);
    }
    Ok(factorization_constant(f, b, p)? - factorization_constant(f, b, &shifted(p, b, 1.0))?)
}

/// Closed-form energy of level n on the branch (no admissibility check).
pub fn level_energy(f: FamilyId, b: Branch, p: &Params, n: usize) -> Result<f64> {
    validate_params(f, p)?;
    require_defined(f, b)?;
    let big_n = spectral_parameter(b, p, n);
    let (l2, w) = (p.lambda * p.lambda, p.omega);
    use FamilyId::*;
    Ok(match f {
        F0Oscillator => w * (2.0 * n as f64 + 1.0) - p.mu * p.mu,
        F1CoulombLike | F6Extended => -w * w / ((2.0 * big_n + 1.0) * (2.0 * big_n + 1.0)),
        F2MorseLike | F4EckartLike | F5HypRmLike => -l2 * (big_n * big_n + w * w / (big_n * big_n)),
        F3TrigRmLike => l2 * (big_n * big_n - w * w / (big_n * big_n)),
        _ => return Err(Error::Branch(format!("{f} has no analytic spectrum"))),
    })
}

/// Lowest asymptotic eigenvalue of V̂ over the infinite ends of the domain,
/// or None when the spectrum is purely discrete.
pub fn continuum_edge(f: FamilyId, p: &Params) -> Option<f64> {
    let l2w = p.lambda * p.lambda * p.omega;
    use FamilyId::*;
    match f {
        F1CoulombLike | S1CoulombScalar => Some(0.0),
        F2MorseLike | F4EckartLike | F5HypRmLike | S3EckartScalar | S4HypRmScalar => {
            Some(-2.0 * l2w.abs())
        }
        F0Oscillator | F3TrigRmLike | F6Extended | S2TrigRmScalar => None,
    }
}
