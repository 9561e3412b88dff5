//! Ground states from direct integration of ψ′ = −Wψ.

use crate::catalog::{self, Branch, FamilyId, MatrixFunction, Params};
use crate::error::{Error, Result};
use crate::gridops::{check_inside, default_grid, Grid, WaveFunction};
use crate::mat2::Vec2;

use super::closed::{assemble, Sample};

pub const ODE_RTOL: f64 = 1e-10;
const ODE_ATOL: f64 = 1e-14;
const MAX_STEPS_PER_CELL: usize = 20_000;
/// |sin| of the angle between the two one-sided solutions below which they
/// are taken to be the same kernel vector.
pub const MATCH_TOL: f64 = 1e-6;
/// Node count used by [`ground_state_degeneracy`].
pub const DEGENERACY_NODES: usize = 2001;

// Dormand–Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

fn rhs(w: &MatrixFunction, x: f64, y: Vec2) -> Vec2 {
    let v = w.eval(x).apply(y);
    [-v[0], -v[1]]
}

/// Advances y from x0 to x1 (either direction) with adaptive steps.
fn advance(w: &MatrixFunction, x0: f64, x1: f64, y0: Vec2, h_guess: &mut f64) -> Result<Vec2> {
    let span = x1 - x0;
    let dir = span.signum();
    let mut x = x0;
    let mut y = y0;
    let mut h = h_guess.abs().min(span.abs());
    for _ in 0..MAX_STEPS_PER_CELL {
        let remaining = (x1 - x).abs();
        if remaining <= 1e-15 * x1.abs().max(1.0) {
            *h_guess = h;
            return Ok(y);
        }
        let step = h.min(remaining);
        let hs = dir * step;
        let mut k = [[0.0; 2]; 7];
        for s in 0..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                ys[0] += hs * A[s][j] * kj[0];
                ys[1] += hs * A[s][j] * kj[1];
            }
            k[s] = rhs(w, x + C[s] * hs, ys);
        }
        let mut y5 = y;
        let mut err = [0.0; 2];
        for s in 0..7 {
            for c in 0..2 {
                y5[c] += hs * B5[s] * k[s][c];
                err[c] += hs * (B5[s] - B4[s]) * k[s][c];
            }
        }
        let scale = ODE_ATOL + ODE_RTOL * y[0].hypot(y[1]).max(y5[0].hypot(y5[1]));
        let e = err[0].abs().max(err[1].abs()) / scale;
        if !e.is_finite() {
            return Err(Error::Stiffness(format!("non-finite step near x = {x}")));
        }
        if e <= 1.0 {
            x += hs;
            y = y5;
        }
        let factor = if e == 0.0 {
            5.0
        } else {
            (0.9 * e.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = step * factor;
        if h < 1e-14 * x.abs().max(1e-3) {
            return Err(Error::Stiffness(format!(
                "step size underflow near x = {x}"
            )));
        }
    }
    Err(Error::Stiffness(format!(
        "more than {MAX_STEPS_PER_CELL} steps between x = {x0} and x = {x1}"
    )))
}

/// Solution sampled at grid nodes as (log scale, unit vector).
type Track = Vec<(f64, Vec2)>;

/// Integrates from node `from` to node `to` inclusive; entry k of the result
/// belongs to node from ± k.
fn integrate(
    w: &MatrixFunction,
    grid: &Grid,
    from: usize,
    to: usize,
    start: Vec2,
) -> Result<Track> {
    let nodes = grid.nodes();
    let norm = start[0].hypot(start[1]);
    let mut y = [start[0] / norm, start[1] / norm];
    let mut log = 0.0;
    let mut out = vec![(log, y)];
    let mut h = grid.spacing() * 0.1;
    let mut i = from;
    while i != to {
        let j = if to > from { i + 1 } else { i - 1 };
        y = advance(w, nodes[i], nodes[j], y, &mut h)?;
        let r = y[0].hypot(y[1]);
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Stiffness(format!(
                "solution degenerated at x = {}",
                nodes[j]
            )));
        }
        y = [y[0] / r, y[1] / r];
        log += r.ln();
        out.push((log, y));
        i = j;
    }
    Ok(out)
}

enum Side {
    Lo,
    Hi,
}

/// Directions at one grid end whose solutions are normalizable there.
fn acceptable(w: &MatrixFunction, grid: &Grid, side: Side) -> Vec<Vec2> {
    let dom = w.domain();
    let (x, wall) = match side {
        Side::Lo => (grid.x_lo(), dom.lo),
        Side::Hi => (grid.x_hi(), dom.hi),
    };
    let m = w.eval(x);
    let (vals, vecs) = m.sym_eigen();
    let mut out = Vec::new();
    for k in 0..2 {
        let ok = if wall.is_finite() {
            // W ≈ M/d near a wall: ψ ~ d^e with e = ∓eig(d·W).
            let d = (x - wall).abs();
            let e = match side {
                Side::Lo => -vals[k] * d,
                Side::Hi => vals[k] * d,
            };
            e > -0.5
        } else {
            let tol = 1e-12 * m.max_abs().max(1.0);
            match side {
                Side::Lo => vals[k] < -tol,
                Side::Hi => vals[k] > tol,
            }
        };
        if ok {
            out.push(vecs[k]);
        }
    }
    out
}

fn to_samples(track: &Track) -> Vec<Sample> {
    track
        .iter()
        .map(|&(log, v)| Sample {
            log,
            phi: v[0],
            xi: v[1],
        })
        .collect()
}

/// Kernel of a⁻ = d/dx + W on the grid restricted to solutions that are
/// normalizable at both ends. Multiple solutions are orthonormalized.
pub fn kernel_on_grid(w: &MatrixFunction, grid: &Grid) -> Result<Vec<WaveFunction>> {
    check_inside(w, grid)?;
    let n = grid.n();
    let mid = n / 2;
    let lo = acceptable(w, grid, Side::Lo);
    let hi = acceptable(w, grid, Side::Hi);
    let mut found: Vec<Vec<Sample>> = Vec::new();
    match (lo.len(), hi.len()) {
        (0, _) | (_, 0) => {}
        (2, 2) => {
            for e in [[1.0, 0.0], [0.0, 1.0]] {
                let left = integrate(w, grid, mid, 0, e)?;
                let right = integrate(w, grid, mid, n - 1, e)?;
                let mut s: Vec<Sample> = to_samples(&left).into_iter().rev().collect();
                s.extend(to_samples(&right).into_iter().skip(1));
                found.push(s);
            }
        }
        (1, 2) => {
            found.push(to_samples(&integrate(w, grid, 0, n - 1, lo[0])?));
        }
        (2, 1) => {
            let t = integrate(w, grid, n - 1, 0, hi[0])?;
            found.push(to_samples(&t).into_iter().rev().collect());
        }
        _ => {
            let left = integrate(w, grid, 0, mid, lo[0])?;
            let right = integrate(w, grid, n - 1, mid, hi[0])?;
            let (ll, vl) = left[mid];
            let (lr, vr) = right[n - 1 - mid];
            let cross = vl[0] * vr[1] - vl[1] * vr[0];
            if cross.abs() < MATCH_TOL {
                let sign = (vl[0] * vr[0] + vl[1] * vr[1]).signum();
                let shift = ll - lr;
                let mut s = to_samples(&left);
                s.extend(right.iter().rev().skip(1).map(|&(log, v)| Sample {
                    log: log + shift,
                    phi: sign * v[0],
                    xi: sign * v[1],
                }));
                found.push(s);
            }
        }
    }
    let mut out: Vec<WaveFunction> = Vec::new();
    for s in &found {
        let mut psi = assemble(grid, s)?;
        for q in &out {
            let c = psi.inner(q);
            psi.axpy(-c, q);
        }
        if psi.norm() < 1e-8 {
            continue;
        }
        out.push(psi.normalized()?);
    }
    Ok(out)
}

fn require_ode_pair(f: FamilyId, b: Branch, p: &Params) -> Result<()> {
    catalog::validate_params(f, p)?;
    if f.is_scalar_reference() {
        return Err(Error::Param(format!("{f} is a scalar reference family")));
    }
    if !catalog::defined_branches(f).contains(&b) {
        return Err(Error::Branch(format!("{b} is not defined for {f}")));
    }
    Ok(())
}

/// All linearly independent normalizable solutions of ψ′ = −Wψ on the grid.
pub fn ground_state_ode(
    f: FamilyId,
    b: Branch,
    p: &Params,
    grid: &Grid,
) -> Result<Vec<WaveFunction>> {
    require_ode_pair(f, b, p)?;
    let w = catalog::superpotential(f, b, p)?;
    kernel_on_grid(&w, grid)
}

/// Number of normalizable kernel vectors of a⁻ (0, 1 or 2).
pub fn ground_state_degeneracy(f: FamilyId, b: Branch, p: &Params) -> Result<usize> {
    require_ode_pair(f, b, p)?;
    let grid = default_grid(f, p, DEGENERACY_NODES, 1)?;
    ground_state_ode(f, b, p, &grid).map(|v| v.len())
}

/// Used by the ladder construction when no closed form exists.
pub(crate) fn first_kernel_vector(w: &MatrixFunction, grid: &Grid) -> Result<WaveFunction> {
    kernel_on_grid(w, grid)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Normalization("no normalizable kernel vector on the grid".into()))
}
