use serde::{Deserialize, Serialize};

use crate::catalog::{Branch, FamilyId, Params};
use crate::gridops::Grid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Analytic,
    Numeric,
}

/// One level of a discrete spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumLevel {
    pub n: usize,
    /// Spectral parameter N (analytic levels only).
    #[serde(rename = "N")]
    pub spectral_parameter: Option<f64>,
    pub branch: Option<Branch>,
    pub energy: f64,
    pub origin: Origin,
    /// Number of independent states expected at this energy.
    pub multiplicity: usize,
}

impl SpectrumLevel {
    pub fn numeric(n: usize, energy: f64) -> Self {
        SpectrumLevel {
            n,
            spectral_parameter: None,
            branch: None,
            energy,
            origin: Origin::Numeric,
            multiplicity: 1,
        }
    }
}

/// |ΔE| < abs + rel·|E| counts as a match.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    /// 1e-6·λ² absolute and 2e-3 relative.
    pub fn default_for(lambda: f64) -> Self {
        Tolerance {
            abs: 1e-6 * lambda * lambda,
            rel: 2e-3,
        }
    }

    pub fn accepts(&self, reference: f64, value: f64) -> bool {
        (value - reference).abs() < self.abs + self.rel * reference.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub analytic: SpectrumLevel,
    pub numeric: SpectrumLevel,
    pub abs_gap: f64,
    pub rel_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub n: usize,
    pub x_lo: f64,
    pub x_hi: f64,
}

impl From<&Grid> for GridInfo {
    fn from(g: &Grid) -> Self {
        GridInfo {
            n: g.n(),
            x_lo: g.x_lo(),
            x_hi: g.x_hi(),
        }
    }
}

/// Result of matching a reference spectrum against a computed one. Each
/// reference state (a level counted with its multiplicity) appears exactly
/// once, either in `matched` or in `unmatched`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub family: Option<FamilyId>,
    pub branch: Option<Branch>,
    pub params: Option<Params>,
    pub tolerance: Tolerance,
    pub matched: Vec<MatchedPair>,
    pub unmatched: Vec<SpectrumLevel>,
    /// Unpaired numeric levels below the continuum estimate.
    pub extras: Vec<SpectrumLevel>,
    /// Unpaired numeric levels at or above the continuum estimate.
    pub continuum: Vec<SpectrumLevel>,
    pub continuum_edge: Option<f64>,
    pub grid: Option<GridInfo>,
}

impl SpectrumReport {
    pub fn all_matched(&self) -> bool {
        self.unmatched.is_empty()
    }

    /// No unmatched reference levels and no unexplained bound levels.
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty() && self.extras.is_empty()
    }

    pub fn max_rel_gap(&self) -> f64 {
        self.matched.iter().map(|m| m.rel_gap).fold(0.0, f64::max)
    }

    pub fn with_context(
        mut self,
        family: FamilyId,
        branch: Option<Branch>,
        params: Params,
        grid: Option<&Grid>,
    ) -> Self {
        self.family = Some(family);
        self.branch = branch;
        self.params = Some(params);
        self.grid = grid.map(GridInfo::from);
        self
    }
}
