use crate::catalog::{self, FamilyId, MatrixFunction, Params};
use crate::error::{Error, Result};
use crate::gridops::{assemble_hamiltonian, build_grid, default_grid, Grid, TruncationPolicy};

use super::analytic::analytic_union;
use super::compare::compare_spectra;
use super::solver::{lowest_eigenpairs, Eigenpair};
use super::types::{SpectrumLevel, SpectrumReport, Tolerance};

/// The k lowest eigenpairs of −d² + V̂ on the grid.
pub fn numeric_spectrum(vhat: &MatrixFunction, grid: &Grid, k: usize) -> Result<Vec<Eigenpair>> {
    let h = assemble_hamiltonian(vhat, grid)?;
    lowest_eigenpairs(&h, k)
}

pub fn numeric_levels(pairs: &[Eigenpair]) -> Vec<SpectrumLevel> {
    pairs
        .iter()
        .enumerate()
        .map(|(n, e)| SpectrumLevel::numeric(n, e.energy))
        .collect()
}

/// Least-squares slope of log(err) against log(h).
pub fn fit_slope(hs: &[f64], errs: &[f64]) -> f64 {
    let xs: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    if sizes.len() < 3 {
        return Err(Error::Param(
            "convergence fit needs at least three grid sizes".into(),
        ));
    }
    let r0 = (sizes[1] - 1) as f64 / (sizes[0] - 1) as f64;
    for w in sizes.windows(2) {
        let r = (w[1] - 1) as f64 / (w[0] - 1) as f64;
        if (r - r0).abs() > 0.02 * r0 || r <= 1.0 {
            return Err(Error::Param(
                "grid sizes must increase in geometric progression".into(),
            ));
        }
    }
    Ok(())
}

/// Observed order of the lowest eigenvalue error against the closed form,
/// on a fixed interval refined through `sizes`.
pub fn convergence_order(f: FamilyId, p: &Params, sizes: &[usize]) -> Result<f64> {
    check_sizes(sizes)?;
    let exact = analytic_union(f, p, 1)?
        .first()
        .map(|l| l.energy)
        .ok_or_else(|| Error::Branch(format!("{f} has no bound level at {p:?}")))?;
    let vhat = catalog::potential(f, p)?;
    // The wall inset costs O(ε^{2s−1}) for a d^s state; shrink it far below
    // the discretization error so the fit sees the stencil order.
    let default_eps = build_grid(f, p, sizes[0], &TruncationPolicy::default())?
        .cutoffs()
        .epsilon_singularity;
    let policy = TruncationPolicy {
        epsilon: Some(1e-7 * default_eps),
        ..Default::default()
    };
    let base = build_grid(f, p, sizes[0], &policy)?;
    let mut hs = Vec::new();
    let mut errs = Vec::new();
    for &n in sizes {
        let g = base.resampled(n)?;
        let e = numeric_spectrum(&vhat, &g, 1)?[0].energy;
        hs.push(g.spacing());
        errs.push((e - exact).abs());
    }
    Ok(fit_slope(&hs, &errs))
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-9
}

fn is_half_integer(x: f64) -> bool {
    is_integer(x - 0.5)
}

/// The scalar direct sum that shares the spectrum of the matrix potential,
/// when the parameters allow one. The scalar family's κ slot carries l + 1/2
/// (Coulomb) or r (the other three).
pub fn isospectral_partner(f: FamilyId, p: &Params) -> Result<(FamilyId, Params)> {
    catalog::validate_params(f, p)?;
    let base = Params {
        kappa: 0.0,
        mu: 0.0,
        ..*p
    };
    let trig_like_r = || -> Result<f64> {
        if is_half_integer(p.kappa) {
            Ok(p.kappa)
        } else if is_integer(p.mu) {
            Ok(0.5 + p.mu)
        } else {
            Err(Error::Param(format!(
                "{f} needs half-integer κ or integer μ, got κ={} μ={}",
                p.kappa, p.mu
            )))
        }
    };
    match f {
        FamilyId::F1CoulombLike => {
            if !is_half_integer(p.mu) {
                return Err(Error::Param(format!(
                    "{f} needs half-integer μ, got μ={}",
                    p.mu
                )));
            }
            Ok((
                FamilyId::S1CoulombScalar,
                Params {
                    kappa: p.kappa,
                    ..base
                },
            ))
        }
        FamilyId::F3TrigRmLike => Ok((
            FamilyId::S2TrigRmScalar,
            Params {
                kappa: trig_like_r()?,
                ..base
            },
        )),
        FamilyId::F4EckartLike => Ok((
            FamilyId::S3EckartScalar,
            Params {
                kappa: trig_like_r()?,
                ..base
            },
        )),
        FamilyId::F5HypRmLike => {
            if !(p.kappa < 0.0 && is_half_integer(p.kappa)) {
                return Err(Error::Param(format!(
                    "{f} needs negative half-integer κ, got κ={}",
                    p.kappa
                )));
            }
            let r = 0.5 + (p.mu * p.mu + 0.5).sqrt();
            Ok((FamilyId::S4HypRmScalar, Params { kappa: r, ..base }))
        }
        _ => Err(Error::Param(format!(
            "{f} has no scalar isospectral partner"
        ))),
    }
}

fn below(levels: Vec<Eigenpair>, edge: Option<f64>) -> Vec<f64> {
    levels
        .into_iter()
        .map(|e| e.energy)
        .filter(|&e| edge.is_none_or(|c| e < c))
        .collect()
}

/// Numeric spectrum of the matrix potential against the union of the two
/// scalar problems, both on the same grid.
pub fn isospectral_check(
    f: FamilyId,
    p: &Params,
    scalar_ref: FamilyId,
    scalar_params: &Params,
    levels: usize,
    grid_n: usize,
    tol: Tolerance,
) -> Result<SpectrumReport> {
    let (expected, _) = isospectral_partner(f, p)?;
    if expected != scalar_ref {
        return Err(Error::Param(format!(
            "{f} pairs with {expected}, not {scalar_ref}"
        )));
    }
    catalog::validate_params(scalar_ref, scalar_params)?;
    if levels == 0 {
        return Err(Error::Param("at least one level must be compared".into()));
    }
    let grid = default_grid(f, p, grid_n, levels)?;
    let matrix = catalog::potential(f, p)?;
    let scalar = catalog::potential(scalar_ref, scalar_params)?;
    let k = levels + 2;
    let (m, s0, s1) = std::thread::scope(|sc| {
        let a = sc.spawn(|| numeric_spectrum(&matrix, &grid, k));
        let b = sc.spawn(|| numeric_spectrum(&scalar.channel(0), &grid, k));
        let c = numeric_spectrum(&scalar.channel(1), &grid, k);
        (
            a.join().expect("solver thread"),
            b.join().expect("solver thread"),
            c,
        )
    });
    let edge = catalog::continuum_edge(f, p);
    let mut reference: Vec<f64> = below(s0?, edge);
    reference.extend(below(s1?, edge));
    reference.sort_by(f64::total_cmp);
    reference.truncate(levels);
    let reference: Vec<SpectrumLevel> = reference
        .iter()
        .enumerate()
        .map(|(n, &e)| SpectrumLevel::numeric(n, e))
        .collect();
    // With no reference levels every matrix bound level is reported as extra.
    let cut = reference
        .last()
        .map(|l| l.energy + tol.abs + tol.rel * l.energy.abs());
    let numeric: Vec<SpectrumLevel> = below(m?, edge)
        .into_iter()
        .filter(|&e| cut.is_none_or(|c| e <= c))
        .take(levels)
        .enumerate()
        .map(|(n, e)| SpectrumLevel::numeric(n, e))
        .collect();
    Ok(compare_spectra(&reference, &numeric, tol, edge).with_context(f, None, *p, Some(&grid)))
}
