use serde::{Deserialize, Serialize};

use crate::catalog::MatrixFunction;
use crate::error::Result;

use super::operator::check_inside;
use super::wavefunction::WaveFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// a⁺ = −d/dx + W
    Up,
    /// a⁻ = d/dx + W
    Down,
}

/// Fourth-order first derivative on a uniform grid, one-sided at the two
/// boundary layers on each side. Needs at least five samples.
pub fn derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "derivative stencil needs five samples");
    let s = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n];
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    }
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * s;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
        + 3.0 * f[n - 5])
        * s;
    d
}

/// ψ′ + Wψ (down) or −ψ′ + Wψ (up).
pub fn apply_ladder(
    direction: Direction,
    w: &MatrixFunction,
    psi: &WaveFunction,
) -> Result<WaveFunction> {
    let grid = psi.grid();
    check_inside(w, grid)?;
    let h = grid.spacing();
    let dphi = derivative(psi.phi(), h);
    let dxi = derivative(psi.xi(), h);
    let sign = match direction {
        Direction::Down => 1.0,
        Direction::Up => -1.0,
    };
    let mut out = WaveFunction::zeros(grid);
    for (i, &x) in grid.nodes().iter().enumerate() {
        let wv = w.eval(x).apply(psi.at(i));
        out.set(i, [sign * dphi[i] + wv[0], sign * dxi[i] + wv[1]]);
    }
    Ok(out)
}
