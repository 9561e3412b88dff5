//! Excited states from ladder chains ψ_n = a⁺(q) ⋯ a⁺(q+n−1) ψ₀(q+n).

use crate::catalog::{self, Branch, FamilyId, Params};
use crate::error::{Error, Result};
use crate::gridops::{
    apply_ladder, check_inside, derivative, Direction, Grid, OperatorMatrix, WaveFunction,
};

use super::closed::{ground_state_closed_form, GroundStateSpec};
use super::ode::first_kernel_vector;

/// Parameters of the k-th factor in the chain. F0 does not shift.
fn step_params(f: FamilyId, b: Branch, p: &Params, k: usize) -> Params {
    if f == FamilyId::F0Oscillator {
        *p
    } else {
        catalog::shifted(p, b, k as f64)
    }
}

fn ground_for_chain(f: FamilyId, b: Branch, q: &Params, grid: &Grid) -> Result<WaveFunction> {
    for &sol in GroundStateSpec::solution_indices(f) {
        match ground_state_closed_form(&GroundStateSpec::new(f, b, sol, *q), grid) {
            Ok((psi, _)) => return Ok(psi),
            Err(Error::ClosedFormUnavailable(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let w = catalog::superpotential(f, b, q)?;
    first_kernel_vector(&w, grid)
}

/// Normalized n-th excited state and its energy E_n = −c(q+n).
pub fn excited_state(
    f: FamilyId,
    b: Branch,
    p: &Params,
    n: usize,
    grid: &Grid,
) -> Result<(WaveFunction, f64)> {
    let bound = catalog::admissible_levels(f, b, p)?;
    if !bound.allows(n) {
        let cap = match bound {
            catalog::LevelCount::Bounded(k) => k,
            catalog::LevelCount::Unbounded => usize::MAX,
        };
        return Err(Error::Level { n, bound: cap });
    }
    let top = step_params(f, b, p, n);
    if !catalog::branch_availability(f, &top)?.contains(&b) {
        return Err(Error::Branch(format!(
            "{b} of {f} is unavailable at the shifted parameters {top:?}"
        )));
    }
    let energy = catalog::level_energy(f, b, p, n)?;
    let mut psi = ground_for_chain(f, b, &top, grid)?;
    if n == 0 {
        return Ok((psi, energy));
    }
    // First factor: a⁺(q+n−1)ψ₀ = (W_{q+n−1} + W_{q+n})ψ₀ since ψ₀′ = −W_{q+n}ψ₀.
    let w_top = catalog::superpotential(f, b, &top)?;
    let w_below = catalog::superpotential(f, b, &step_params(f, b, p, n - 1))?;
    check_inside(&w_below, grid)?;
    let mut next = WaveFunction::zeros(grid);
    for (i, &x) in grid.nodes().iter().enumerate() {
        next.set(i, (w_top.eval(x) + w_below.eval(x)).apply(psi.at(i)));
    }
    psi = next.normalized()?;
    for k in (0..n - 1).rev() {
        let w = catalog::superpotential(f, b, &step_params(f, b, p, k))?;
        psi = apply_ladder(Direction::Up, &w, &psi)?.normalized()?;
    }
    Ok((psi, energy))
}

/// ‖ψ′ + Wψ‖/‖ψ‖ over the nodes where the centered stencil applies.
pub fn ground_state_residual(w: &catalog::MatrixFunction, psi: &WaveFunction) -> Result<f64> {
    let grid = psi.grid();
    check_inside(w, grid)?;
    let n = grid.n();
    if n < 5 {
        return Err(Error::Grid(format!(
            "{n} nodes are too few for the derivative stencil"
        )));
    }
    let h = grid.spacing();
    let dphi = derivative(psi.phi(), h);
    let dxi = derivative(psi.xi(), h);
    let (mut num, mut den) = (0.0, 0.0);
    for i in 2..n - 2 {
        let v = psi.at(i);
        let wv = w.eval(grid.nodes()[i]).apply(v);
        num += (dphi[i] + wv[0]).powi(2) + (dxi[i] + wv[1]).powi(2);
        den += v[0] * v[0] + v[1] * v[1];
    }
    if !(den > 0.0) {
        return Err(Error::Normalization(
            "state vanishes on the interior nodes".into(),
        ));
    }
    Ok((num / den).sqrt())
}

/// ⟨ψ, Hψ⟩/⟨ψ, ψ⟩ on the operator's grid.
pub fn rayleigh_quotient(h: &OperatorMatrix, psi: &WaveFunction) -> Result<f64> {
    let (a, b) = (h.grid(), psi.grid());
    if a.n() != b.n() || a.x_lo() != b.x_lo() || a.x_hi() != b.x_hi() {
        return Err(Error::Grid(
            "state and operator live on different grids".into(),
        ));
    }
    Ok(h.rayleigh_quotient(psi))
}
