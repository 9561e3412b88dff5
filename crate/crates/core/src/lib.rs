//! Matrix shape-invariant superpotentials for supersymmetric quantum mechanics.
//!
//! The crate is organised bottom-up:
//! - [`specfun`]: Bessel, hypergeometric and gamma functions,
//! - [`catalog`]: superpotentials, potentials, constants and parameter rules,
//! - [`gridops`]: grids, stencils, Hamiltonian assembly and identity residuals,
//! - [`eigensolve`]: analytic and finite-difference spectra and their comparison,
//! - [`states`]: closed-form, ODE and ladder-built eigenstates,
//! - [`report`]: serializable report types and output formatting.

pub mod catalog;
pub mod eigensolve;
pub mod error;
pub mod gridops;
pub mod mat2;
pub mod report;
pub mod specfun;
pub mod states;

pub use catalog::{Branch, FamilyId, MatrixFunction, Params};
pub use eigensolve::{SpectrumLevel, SpectrumReport, Tolerance};
pub use error::{Error, Result};
pub use gridops::{Grid, WaveFunction};
pub use mat2::{Mat2, Vec2};
pub use report::SpectrumTable;
pub use states::GroundStateSpec;
