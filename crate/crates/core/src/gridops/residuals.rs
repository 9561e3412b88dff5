use crate::catalog::{self, Branch, FamilyId, MatrixFunction, Params};
use crate::error::{Error, Result};
use crate::mat2::Mat2;

use super::grid::Grid;
use super::ladder::{apply_ladder, Direction};
use super::operator::check_inside;
use super::wavefunction::WaveFunction;

/// max over the window samples of ‖(W_q² + W_q′) − (W_next² − W_next′) − dc·I‖∞.
pub fn shape_invariance_between(
    w_q: &MatrixFunction,
    w_next: &MatrixFunction,
    dc: f64,
    samples: usize,
) -> f64 {
    w_q.sample_points(samples)
        .into_iter()
        .map(|x| {
            let (a, da) = (w_q.eval(x), w_q.derivative(x));
            let (b, db) = (w_next.eval(x), w_next.derivative(x));
            (a * a + da - (b * b - db) - Mat2::IDENTITY * dc).norm_inf()
        })
        .fold(0.0, f64::max)
}

/// Closed-form shape-invariance residual between the parameter q and q+1.
pub fn shape_invariance_residual(
    f: FamilyId,
    b: Branch,
    p: &Params,
    samples: usize,
) -> Result<f64> {
    if samples < 10 {
        return Err(Error::Param(format!(
            "{samples} samples requested, at least 10 needed"
        )));
    }
    let w_q = catalog::superpotential(f, b, p)?;
    let next = if f == FamilyId::F0Oscillator {
        *p
    } else {
        catalog::shifted(p, b, 1.0)
    };
    let w_next = catalog::superpotential(f, b, &next)?;
    let dc = catalog::shift_constant(f, b, p)?;
    Ok(shape_invariance_between(&w_q, &w_next, dc, samples))
}

/// Second-order −ψ″ + V̂ψ at the interior nodes; zero at the two ends.
fn apply_hamiltonian(vhat: &MatrixFunction, psi: &WaveFunction) -> WaveFunction {
    let g = psi.grid();
    let n = g.n();
    let h2 = g.spacing() * g.spacing();
    let mut out = WaveFunction::zeros(g);
    for i in 1..n - 1 {
        let v = vhat.eval(g.nodes()[i]).apply(psi.at(i));
        let lap = |c: &[f64]| (c[i - 1] - 2.0 * c[i] + c[i + 1]) / h2;
        out.set(i, [v[0] - lap(psi.phi()), v[1] - lap(psi.xi())]);
    }
    out
}

/// ‖(Ĥ_q a⁺ − a⁺ Ĥ_next) f‖₂ / ‖f‖₂ with a⁺ built from `w`, evaluated on the
/// nodes at least two steps away from either end.
pub fn intertwining_between(
    w: &MatrixFunction,
    v_q: &MatrixFunction,
    v_next: &MatrixFunction,
    f: &WaveFunction,
) -> Result<f64> {
    let g = f.grid();
    check_inside(v_q, g)?;
    check_inside(v_next, g)?;
    let left = apply_hamiltonian(v_q, &apply_ladder(Direction::Up, w, f)?);
    let right = apply_ladder(Direction::Up, w, &apply_hamiltonian(v_next, f))?;
    let n = g.n();
    let mut r = 0.0;
    for i in 2..n - 2 {
        let (a, b) = (left.at(i), right.at(i));
        r += (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2);
    }
    let norm = f.norm_sq() / g.spacing();
    if !(norm > 0.0) {
        return Err(Error::Grid("test function vanishes".into()));
    }
    Ok((r / norm).sqrt())
}

/// Grid version of Ĥ_κ a⁺_κ = a⁺_κ Ĥ_{κ+1} on the κ branch.
pub fn intertwining_residual(f: FamilyId, p: &Params, test_fn: &WaveFunction) -> Result<f64> {
    let b = Branch::KappaBranch;
    let w = catalog::superpotential(f, b, p)?;
    let v_q = catalog::potential(f, p)?;
    let v_next = if f == FamilyId::F0Oscillator {
        // No parameter step: the partner is the same oscillator raised by 2ω.
        v_q.shifted(2.0 * p.omega)
    } else {
        catalog::potential(f, &catalog::shifted(p, b, 1.0))?
    };
    intertwining_between(&w, &v_q, &v_next, test_fn)
}

/// Smooth bump exp(−((x−x0)/width)²) with a coupled odd partner in ξ.
pub fn gaussian_bump(grid: &Grid, center: f64, width: f64) -> WaveFunction {
    WaveFunction::from_fn(grid, |x| {
        let t = (x - center) / width;
        let e = (-t * t).exp();
        [e, 0.7 * t * e]
    })
}
