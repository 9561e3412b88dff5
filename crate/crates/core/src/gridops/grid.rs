use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, FamilyId, LevelCount, Params};
use crate::error::{Error, Result};

pub const MIN_NODES: usize = 16;
/// Relative amplitude at which infinite ends are cut.
pub const TAIL_AMPLITUDE: f64 = 1e-12;

/// How one end of the computational interval was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndKind {
    /// Inset by ε from a singular wall of the potential.
    Singular,
    /// Cut off an infinite tail.
    Tail,
    /// Given directly.
    Regular,
}

/// Record of how the domain was truncated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cutoffs {
    pub epsilon_singularity: f64,
    pub tail_length: f64,
    pub lo: EndKind,
    pub hi: EndKind,
    /// The domain end behind each grid end (±∞ for tails).
    pub wall_lo: f64,
    pub wall_hi: f64,
}

/// Truncation settings for [`build_grid`]. Unset values are chosen per family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub epsilon: Option<f64>,
    pub tail: Option<f64>,
    /// Number of levels the grid must resolve; sets the default tail length.
    pub levels: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            epsilon: None,
            tail: None,
            levels: 1,
        }
    }
}

impl TruncationPolicy {
    pub fn explicit(epsilon: f64, tail: f64) -> Self {
        TruncationPolicy {
            epsilon: Some(epsilon),
            tail: Some(tail),
            levels: 1,
        }
    }

    pub fn with_levels(mut self, levels: usize) -> Self {
        self.levels = levels.max(1);
        self
    }
}

/// Uniform grid including both end nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    x_lo: f64,
    x_hi: f64,
    spacing: f64,
    nodes: Arc<[f64]>,
    cutoffs: Cutoffs,
}

impl Grid {
    /// `n` uniform nodes on [x_lo, x_hi].
    pub fn uniform(x_lo: f64, x_hi: f64, n: usize) -> Result<Grid> {
        let cut = Cutoffs {
            epsilon_singularity: 0.0,
            tail_length: 0.0,
            lo: EndKind::Regular,
            hi: EndKind::Regular,
            wall_lo: x_lo,
            wall_hi: x_hi,
        };
        Grid::with_cutoffs(x_lo, x_hi, n, cut)
    }

    fn with_cutoffs(x_lo: f64, x_hi: f64, n: usize, cutoffs: Cutoffs) -> Result<Grid> {
        if n < MIN_NODES {
            return Err(Error::Grid(format!(
                "{n} nodes requested, at least {MIN_NODES} needed"
            )));
        }
        if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
            return Err(Error::Grid(format!(
                "empty or invalid interval [{x_lo}, {x_hi}]"
            )));
        }
        let h = (x_hi - x_lo) / (n - 1) as f64;
        let mut nodes: Vec<f64> = (0..n).map(|i| x_lo + i as f64 * h).collect();
        nodes[n - 1] = x_hi;
        Ok(Grid {
            x_lo,
            x_hi,
            spacing: h,
            nodes: nodes.into(),
            cutoffs,
        })
    }

    pub fn x_lo(&self) -> f64 {
        self.x_lo
    }

    pub fn x_hi(&self) -> f64 {
        self.x_hi
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn cutoffs(&self) -> &Cutoffs {
        &self.cutoffs
    }

    /// Same interval with a different node count.
    pub fn resampled(&self, n: usize) -> Result<Grid> {
        Grid::with_cutoffs(self.x_lo, self.x_hi, n, self.cutoffs)
    }

    /// Index of the node closest to x.
    pub fn nearest(&self, x: f64) -> usize {
        let i = ((x - self.x_lo) / self.spacing).round();
        i.clamp(0.0, (self.n() - 1) as f64) as usize
    }
}

/// Natural length unit used for the default wall inset.
fn length_scale(f: FamilyId, p: &Params) -> f64 {
    match f {
        FamilyId::F6Extended => p.c_ext,
        _ => 1.0 / p.lambda,
    }
}

/// Smallest L beyond the peak of x^pw·e^{−rate·x} where the relative
/// amplitude has dropped below TAIL_AMPLITUDE.
fn tail_cut(rate: f64, pw: f64) -> f64 {
    let target = TAIL_AMPLITUDE.ln();
    if pw <= 0.0 {
        return -target / rate;
    }
    let peak = pw / rate;
    let log_amp = |x: f64| pw * (x / peak).ln() - rate * (x - peak);
    let mut x = peak.max(1e-3);
    while log_amp(x) > target {
        x *= 1.02;
    }
    x
}

/// Highest energy among the first `levels` analytic levels of the available
/// branches, which has the slowest decay.
fn top_energy(f: FamilyId, p: &Params, levels: usize) -> Option<f64> {
    let branches = catalog::branch_availability(f, p).ok()?;
    let mut top: Option<f64> = None;
    for b in branches {
        let count = match catalog::admissible_levels(f, b, p).ok()? {
            LevelCount::Bounded(0) => continue,
            c => c.capped(levels),
        };
        let e = catalog::level_energy(f, b, p, count - 1).ok()?;
        top = Some(top.map_or(e, |t: f64| t.max(e)));
    }
    top
}

/// Default tail lengths (left, right) for infinite ends.
fn default_tails(f: FamilyId, p: &Params, levels: usize) -> (f64, f64) {
    use FamilyId::*;
    let l = p.lambda;
    let edge = catalog::continuum_edge(f, p).unwrap_or(0.0);
    let decay = |fallback: f64| -> f64 {
        match top_energy(f, p, levels) {
            Some(e) if e < edge => (edge - e).sqrt(),
            _ => fallback,
        }
    };
    match f {
        F0Oscillator => {
            let w = p.omega;
            let half = p.mu.abs() / w + ((2.0 * 27.7 + 4.0 * levels as f64) / w).sqrt();
            (half, half)
        }
        F1CoulombLike | S1CoulombScalar => {
            // Hydrogen-like tail x^{N+1} e^{−ωx/(2N+1)}.
            let big_n = p.kappa.abs() + levels as f64;
            let rate = match top_energy(f, p, levels) {
                Some(e) if e < 0.0 => (-e).sqrt(),
                _ => p.omega / (2.0 * big_n + 1.0),
            };
            (0.0, tail_cut(rate, big_n + 1.0))
        }
        F2MorseLike => {
            let right = tail_cut(decay(0.5 * l), levels as f64);
            // exp(−μ e^{−λx}) falls below e^{−40} at the left end.
            let left = (40.0 / p.mu).ln() / l;
            (left.max(1.0 / l), right)
        }
        F4EckartLike | S3EckartScalar => (0.0, tail_cut(decay(0.5 * l), levels as f64)),
        F5HypRmLike | S4HypRmScalar => {
            let t = tail_cut(decay(0.5 * l), levels as f64);
            (t, t)
        }
        F3TrigRmLike | S2TrigRmScalar | F6Extended => (0.0, 0.0),
    }
}

/// Grid on the family's domain, with singular walls inset by ε and infinite
/// tails cut at L (from the policy or the decay of the requested levels).
pub fn build_grid(f: FamilyId, p: &Params, n: usize, policy: &TruncationPolicy) -> Result<Grid> {
    catalog::validate_params(f, p)?;
    if n < MIN_NODES {
        return Err(Error::Grid(format!(
            "{n} nodes requested, at least {MIN_NODES} needed"
        )));
    }
    let domain = f.domain(p);
    let eps = policy.epsilon.unwrap_or(1e-3 * length_scale(f, p));
    if !(eps > 0.0) {
        return Err(Error::Grid("ε must be positive".into()));
    }
    let (tail_lo, tail_hi) = match policy.tail {
        Some(l) if l > 0.0 => (l, l),
        Some(_) => return Err(Error::Grid("tail length must be positive".into())),
        None => default_tails(f, p, policy.levels.max(1)),
    };
    let (x_lo, lo_kind) = if domain.lo.is_finite() {
        (domain.lo + eps, EndKind::Singular)
    } else {
        (-tail_lo, EndKind::Tail)
    };
    let (x_hi, hi_kind) = if domain.hi.is_finite() {
        (domain.hi - eps, EndKind::Singular)
    } else {
        (tail_hi, EndKind::Tail)
    };
    if !(x_lo < x_hi) {
        return Err(Error::Grid(format!("empty interval [{x_lo}, {x_hi}]")));
    }
    let cut = Cutoffs {
        epsilon_singularity: eps,
        tail_length: if policy.tail.is_some()
            || lo_kind == EndKind::Tail
            || hi_kind == EndKind::Tail
        {
            tail_hi.max(tail_lo)
        } else {
            0.0
        },
        lo: lo_kind,
        hi: hi_kind,
        wall_lo: domain.lo,
        wall_hi: domain.hi,
    };
    Grid::with_cutoffs(x_lo, x_hi, n, cut)
}

/// Grid for the given family using its available branches' level count.
pub fn default_grid(f: FamilyId, p: &Params, n: usize, levels: usize) -> Result<Grid> {
    build_grid(f, p, n, &TruncationPolicy::default().with_levels(levels))
}
