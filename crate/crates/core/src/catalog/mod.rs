//! The catalog of superpotentials, potentials, factorization constants and
//! parameter rules, all as evaluable closed forms.
//!
//! Conventions: α = 1, so the shape-invariance step is κ → κ+1 (or μ → μ+1 on
//! the dual branch). Every superpotential W satisfies W² − W′ = V̂ + c·I and the
//! Hamiltonian is Ĥ = −d²/dx² + V̂ = a⁺a⁻ − c, so the ground energy is −c and
//! E_n = −c at the parameter shifted by n.

mod families;
mod function;
mod rules;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat2::Mat2;

pub use families::{potential, superpotential};
pub use function::{Domain, Evaluator, Layout, MatrixFunction};
pub use rules::{
    admissible_levels, branch_availability, continuum_edge, defined_branches, dual_transform,
    factorization_constant, level_energy, printed_mu_constant, shift_constant, shifted,
    spectral_parameter, validate_params, LevelCount,
};

/// Identifier of one catalog family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    #[serde(rename = "F0_oscillator")]
    F0Oscillator,
    #[serde(rename = "F1_coulomb_like")]
    F1CoulombLike,
    #[serde(rename = "F2_morse_like")]
    F2MorseLike,
    #[serde(rename = "F3_trig_rm_like")]
    F3TrigRmLike,
    #[serde(rename = "F4_eckart_like")]
    F4EckartLike,
    #[serde(rename = "F5_hyp_rm_like")]
    F5HypRmLike,
    #[serde(rename = "F6_extended")]
    F6Extended,
    #[serde(rename = "S1_coulomb_scalar")]
    S1CoulombScalar,
    #[serde(rename = "S2_trig_rm_scalar")]
    S2TrigRmScalar,
    #[serde(rename = "S3_eckart_scalar")]
    S3EckartScalar,
    #[serde(rename = "S4_hyp_rm_scalar")]
    S4HypRmScalar,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::F0Oscillator,
        FamilyId::F1CoulombLike,
        FamilyId::F2MorseLike,
        FamilyId::F3TrigRmLike,
        FamilyId::F4EckartLike,
        FamilyId::F5HypRmLike,
        FamilyId::F6Extended,
        FamilyId::S1CoulombScalar,
        FamilyId::S2TrigRmScalar,
        FamilyId::S3EckartScalar,
        FamilyId::S4HypRmScalar,
    ];

    /// The five matrix families with closed-form ground states.
    pub const MATRIX: [FamilyId; 5] = [
        FamilyId::F1CoulombLike,
        FamilyId::F2MorseLike,
        FamilyId::F3TrigRmLike,
        FamilyId::F4EckartLike,
        FamilyId::F5HypRmLike,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::F0Oscillator => "F0_oscillator",
            FamilyId::F1CoulombLike => "F1_coulomb_like",
            FamilyId::F2MorseLike => "F2_morse_like",
            FamilyId::F3TrigRmLike => "F3_trig_rm_like",
            FamilyId::F4EckartLike => "F4_eckart_like",
            FamilyId::F5HypRmLike => "F5_hyp_rm_like",
            FamilyId::F6Extended => "F6_extended",
            FamilyId::S1CoulombScalar => "S1_coulomb_scalar",
            FamilyId::S2TrigRmScalar => "S2_trig_rm_scalar",
            FamilyId::S3EckartScalar => "S3_eckart_scalar",
            FamilyId::S4HypRmScalar => "S4_hyp_rm_scalar",
        }
    }

    /// Scalar reference problems (direct sums of two scalar potentials).
    pub fn is_scalar_reference(self) -> bool {
        matches!(
            self,
            FamilyId::S1CoulombScalar
                | FamilyId::S2TrigRmScalar
                | FamilyId::S3EckartScalar
                | FamilyId::S4HypRmScalar
        )
    }

    /// Families shape invariant in μ as well as κ.
    pub fn has_mu_branch(self) -> bool {
        matches!(
            self,
            FamilyId::F1CoulombLike | FamilyId::F3TrigRmLike | FamilyId::F4EckartLike
        )
    }

    /// The scalar reference that the family is isospectral to, if any.
    pub fn scalar_reference(self) -> Option<FamilyId> {
        match self {
            FamilyId::F1CoulombLike => Some(FamilyId::S1CoulombScalar),
            FamilyId::F3TrigRmLike => Some(FamilyId::S2TrigRmScalar),
            FamilyId::F4EckartLike => Some(FamilyId::S3EckartScalar),
            FamilyId::F5HypRmLike => Some(FamilyId::S4HypRmScalar),
            _ => None,
        }
    }

    /// Open domain of the independent variable.
    pub fn domain(self, p: &Params) -> Domain {
        use FamilyId::*;
        match self {
            F0Oscillator | F2MorseLike | F5HypRmLike | S4HypRmScalar => Domain::real_line(),
            F1CoulombLike | F4EckartLike | S1CoulombScalar | S3EckartScalar => Domain::half_line(),
            F3TrigRmLike | S2TrigRmScalar => {
                let edge = std::f64::consts::FRAC_PI_2 / p.lambda;
                Domain::new(-edge, edge)
            }
            F6Extended => Domain::new(-p.c_ext, p.c_ext),
        }
    }

    /// One-line description used by the CLI listing.
    pub fn describe(self) -> &'static str {
        use FamilyId::*;
        match self {
            F0Oscillator => "W = ωx + μσ₃ on ℝ (α = 0: two shifted oscillators)",
            F1CoulombLike => "W = ((2μ+1)σ₃ − (2κ+1))/(2x) + ω/(2κ+1)σ₁ on (0,∞)",
            F2MorseLike => "W = λ(−κ + μe^{−λx}σ₁ − (ω/κ)σ₃) on ℝ",
            F3TrigRmLike => "W = λ(κ tan λx + μ sec λx σ₃ + (ω/κ)σ₁) on |λx| < π/2",
            F4EckartLike => "W = λ(−κ coth λx + μ csch λx σ₃ − (ω/κ)σ₁) on (0,∞)",
            F5HypRmLike => "W = λ(−κ tanh λx + μ sech λx σ₁ − (ω/κ)σ₃) on ℝ",
            F6Extended => "W = (κ+½)(x − cσ₃)/(c² − x²) + ω/(2κ+1)σ₁ on (−c,c)",
            S1CoulombScalar => "V = l(l+1)/x² ∓ ω/x, l = κ − ½ (Coulomb pair)",
            S2TrigRmScalar => "V = λ²(r(r−1)sec² λx ± 2ω tan λx), r = κ",
            S3EckartScalar => "V = λ²(r(r−1)csch² λx ± 2ω coth λx), r = κ",
            S4HypRmScalar => "V = λ²(r(r−1)sech² λx ± 2ω tanh λx), r = κ",
        }
    }

    /// Parameter sign rules in words.
    pub fn parameter_rules(self) -> &'static str {
        use FamilyId::*;
        match self {
            F0Oscillator => "ω > 0; μ real; κ unused",
            F1CoulombLike => "μ > −1/2, ω > 0, 2κ+1 ≠ 0",
            F2MorseLike => "μ > 0, ω > 0, κ ≠ 0",
            F3TrigRmLike => "μ > 0, ω > 0, κ ≠ 0",
            F4EckartLike => "μ < 0, ω > 0, κ ≠ 0",
            F5HypRmLike => "μ > 0, ω > 0, κ ≠ 0",
            F6Extended => "c > 0, ω > 0, 2κ+1 ≠ 0",
            S1CoulombScalar => "ω > 0 (κ carries l + 1/2)",
            S2TrigRmScalar | S3EckartScalar | S4HypRmScalar => "ω ≥ 0 (κ carries r)",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|f| f.as_str().eq_ignore_ascii_case(s) || f.as_str()[..2].eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Param(format!("unknown family '{s}'")))
    }
}

/// Which parameter the shape-invariance step shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    KappaBranch,
    MuBranch,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::KappaBranch => "KappaBranch",
            Branch::MuBranch => "MuBranch",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kappa" | "kappabranch" | "k" => Ok(Branch::KappaBranch),
            "mu" | "mubranch" | "m" => Ok(Branch::MuBranch),
            _ => Err(Error::Param(format!(
                "unknown branch '{s}' (expected kappa or mu)"
            ))),
        }
    }
}

/// Real parameters of a family. `c_ext` is only read by F6.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub lambda: f64,
    pub kappa: f64,
    pub mu: f64,
    pub omega: f64,
    #[serde(rename = "c")]
    pub c_ext: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            lambda: 1.0,
            kappa: 0.0,
            mu: 0.0,
            omega: 0.0,
            c_ext: 1.0,
        }
    }
}

impl Params {
    pub fn new(kappa: f64, mu: f64, omega: f64) -> Self {
        Params {
            kappa,
            mu,
            omega,
            ..Params::default()
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn with_c(mut self, c_ext: f64) -> Self {
        self.c_ext = c_ext;
        self
    }
}

/// `s0·I + s1·σ₁ + s3·σ₃`.
pub(crate) fn pauli(s0: f64, s1: f64, s3: f64) -> Mat2 {
    Mat2::pauli(s0, s1, s3)
}

/// Pointwise residual W² − W′ − V̂ at x.
pub fn factorization_residual(w: &MatrixFunction, vhat: &MatrixFunction, x: f64) -> Mat2 {
    let wx = w.eval(x);
    wx * wx - w.derivative(x) - vhat.eval(x)
}

/// Recovers c from W² − W′ − V̂ = c·I at `samples` points of W's window.
///
/// The diagonal spread and the off-diagonal entries must stay below 1e-8
/// relative to max(1, max‖W²‖∞) over the samples.
pub fn extract_constant(w: &MatrixFunction, vhat: &MatrixFunction, samples: usize) -> Result<f64> {
    if samples == 0 {
        return Err(Error::Param("at least one sample is required".into()));
    }
    let mut diag = Vec::with_capacity(2 * samples);
    let mut off: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for x in w.sample_points(samples) {
        let wx = w.eval(x);
        scale = scale.max((wx * wx).norm_inf());
        let r = factorization_residual(w, vhat, x);
        diag.push(r.a);
        diag.push(r.d);
        off = off.max(r.b.abs()).max(r.c.abs());
    }
    let max = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = max - min;
    let tol = 1e-8 * scale;
    if !(spread < tol && off < tol) {
        return Err(Error::NonConstantResidual {
            spread,
            off_diagonal: off,
        });
    }
    Ok(diag.iter().sum::<f64>() / diag.len() as f64)
}
