//! Discrete spectra: closed-form levels, finite-difference eigenpairs and
//! their comparison.

mod analytic;
mod compare;
mod numeric;
mod solver;
mod types;

pub use analytic::{analytic_spectrum, analytic_union, level_multiplicity, state_count};
pub use compare::compare_spectra;
pub use numeric::{
    convergence_order, fit_slope, isospectral_check, isospectral_partner, numeric_levels,
    numeric_spectrum,
};
pub use solver::{lowest_eigenpairs, lowest_eigenvalues, sturm_count, Eigenpair, RESIDUAL_TOL};
pub use types::{GridInfo, MatchedPair, Origin, SpectrumLevel, SpectrumReport, Tolerance};
