//! Special functions used by the ground-state closed forms.

pub mod bessel;
pub mod gamma;
pub mod hyper;

pub use bessel::{bessel_i, bessel_ik, bessel_k, bessel_k_scaled, bessel_k_with_derivative};
pub use gamma::{digamma, gamma, ln_gamma};
pub use hyper::{gauss_2f1, gauss_2f1_split, HypParams};

use num_complex::Complex64;

use crate::error::Result;

/// ln Γ(z_re + i z_im) on the principal branch, as a (real, imaginary) pair.
pub fn complex_log_gamma(z_re: f64, z_im: f64) -> Result<(f64, f64)> {
    let v = ln_gamma(Complex64::new(z_re, z_im))?;
    Ok((v.re, v.im))
}
