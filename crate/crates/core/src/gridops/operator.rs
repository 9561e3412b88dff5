use crate::catalog::MatrixFunction;
use crate::error::{Error, Result};
use crate::mat2::{Mat2, Vec2};

use super::grid::Grid;
use super::wavefunction::WaveFunction;

/// Dirichlet discretization of −d²/dx² + V̂ on the interior nodes of a grid:
/// a symmetric block-tridiagonal matrix with 1×1 or 2×2 diagonal blocks and
/// off-diagonal blocks −I/h².
#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    grid: Grid,
    channels: usize,
    diag: Vec<Mat2>,
    off: f64,
}

pub fn check_inside(f: &MatrixFunction, grid: &Grid) -> Result<()> {
    let d = f.domain();
    if !d.contains_closed(grid.x_lo(), grid.x_hi()) {
        return Err(Error::Grid(format!(
            "grid [{}, {}] leaves the domain ({}, {})",
            grid.x_lo(),
            grid.x_hi(),
            d.lo,
            d.hi
        )));
    }
    Ok(())
}

/// Assembles the Hamiltonian with a second-order central stencil.
pub fn assemble_hamiltonian(vhat: &MatrixFunction, grid: &Grid) -> Result<OperatorMatrix> {
    check_inside(vhat, grid)?;
    let channels = vhat.layout().channels();
    let h = grid.spacing();
    let kinetic = 2.0 / (h * h);
    let nodes = grid.nodes();
    let mut diag = Vec::with_capacity(nodes.len() - 2);
    for &x in &nodes[1..nodes.len() - 1] {
        let mut v = vhat.eval(x);
        if !v.is_finite() {
            return Err(Error::Domain(format!("potential is not finite at x = {x}")));
        }
        if channels == 1 {
            v = Mat2::diag(v.a, 0.0);
        }
        // Symmetrize against rounding in the closed forms.
        let s = 0.5 * (v.b + v.c);
        v.b = s;
        v.c = s;
        diag.push(v + Mat2::IDENTITY * kinetic);
    }
    Ok(OperatorMatrix {
        grid: grid.clone(),
        channels,
        diag,
        off: -1.0 / (h * h),
    })
}

impl OperatorMatrix {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Number of interior nodes.
    pub fn blocks(&self) -> usize {
        self.diag.len()
    }

    pub fn dim(&self) -> usize {
        self.channels * self.diag.len()
    }

    pub fn diag_blocks(&self) -> &[Mat2] {
        &self.diag
    }

    /// Coefficient of the off-diagonal identity blocks.
    pub fn off(&self) -> f64 {
        self.off
    }

    /// Adds s·I.
    pub fn shifted(&self, s: f64) -> OperatorMatrix {
        let mut out = self.clone();
        for d in &mut out.diag {
            d.a += s;
            if self.channels == 2 {
                d.d += s;
            }
        }
        out
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let m = self.diag.len();
        for (i, d) in self.diag.iter().enumerate() {
            let nb = (if i > 0 { 1.0 } else { 0.0 } + if i + 1 < m { 1.0 } else { 0.0 })
                * self.off.abs();
            if self.channels == 1 {
                lo = lo.min(d.a - nb);
                hi = hi.max(d.a + nb);
            } else {
                lo = lo.min((d.a - d.b.abs()).min(d.d - d.c.abs()) - nb);
                hi = hi.max((d.a + d.b.abs()).max(d.d + d.c.abs()) + nb);
            }
        }
        (lo, hi)
    }

    /// y = H·x in interleaved ordering (index = channels·node + component).
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let c = self.channels;
        let m = self.diag.len();
        assert_eq!(x.len(), c * m);
        let mut y = vec![0.0; c * m];
        for i in 0..m {
            let d = &self.diag[i];
            if c == 1 {
                let mut s = d.a * x[i];
                if i > 0 {
                    s += self.off * x[i - 1];
                }
                if i + 1 < m {
                    s += self.off * x[i + 1];
                }
                y[i] = s;
            } else {
                let (p, q) = (x[2 * i], x[2 * i + 1]);
                let mut s0 = d.a * p + d.b * q;
                let mut s1 = d.c * p + d.d * q;
                if i > 0 {
                    s0 += self.off * x[2 * i - 2];
                    s1 += self.off * x[2 * i - 1];
                }
                if i + 1 < m {
                    s0 += self.off * x[2 * i + 2];
                    s1 += self.off * x[2 * i + 3];
                }
                y[2 * i] = s0;
                y[2 * i + 1] = s1;
            }
        }
        y
    }

    /// Dense copy, for small problems and tests.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let c = self.channels;
        let mut a = vec![vec![0.0; n]; n];
        for (i, d) in self.diag.iter().enumerate() {
            if c == 1 {
                a[i][i] = d.a;
            } else {
                a[2 * i][2 * i] = d.a;
                a[2 * i][2 * i + 1] = d.b;
                a[2 * i + 1][2 * i] = d.c;
                a[2 * i + 1][2 * i + 1] = d.d;
            }
            if i + 1 < self.diag.len() {
                for k in 0..c {
                    a[c * i + k][c * (i + 1) + k] = self.off;
                    a[c * (i + 1) + k][c * i + k] = self.off;
                }
            }
        }
        a
    }

    /// Interior samples of ψ as an interleaved vector.
    pub fn restrict(&self, psi: &WaveFunction) -> Vec<f64> {
        let c = self.channels;
        let mut v = Vec::with_capacity(self.dim());
        for i in 1..psi.grid().n() - 1 {
            v.push(psi.phi()[i]);
            if c == 2 {
                v.push(psi.xi()[i]);
            }
        }
        v
    }

    /// Full-grid function from an interleaved interior vector, zero at the ends.
    pub fn extend(&self, v: &[f64]) -> WaveFunction {
        let mut w = WaveFunction::zeros(&self.grid);
        let c = self.channels;
        for i in 0..self.diag.len() {
            let val: Vec2 = if c == 1 {
                [v[i], 0.0]
            } else {
                [v[2 * i], v[2 * i + 1]]
            };
            w.set(i + 1, val);
        }
        w
    }

    /// ⟨ψ|H|ψ⟩/⟨ψ|ψ⟩ with ψ restricted to the interior nodes.
    pub fn rayleigh_quotient(&self, psi: &WaveFunction) -> f64 {
        let v = self.restrict(psi);
        let hv = self.matvec(&v);
        let num: f64 = v.iter().zip(&hv).map(|(a, b)| a * b).sum();
        let den: f64 = v.iter().map(|a| a * a).sum();
        num / den
    }

    /// ‖Hψ − Eψ‖/‖ψ‖ on the interior nodes.
    pub fn eigen_residual(&self, psi: &WaveFunction, energy: f64) -> f64 {
        let v = self.restrict(psi);
        let hv = self.matvec(&v);
        let r: f64 = hv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - energy * b).powi(2))
            .sum();
        let n: f64 = v.iter().map(|a| a * a).sum();
        (r / n).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Domain, Layout};

    #[test]
    fn dense_matches_matvec() {
        let g = Grid::uniform(-1.0, 1.0, 20).unwrap();
        let v = MatrixFunction::new(
            |x| Mat2::pauli(x * x, 0.3 * x, 1.0),
            |x| Mat2::pauli(2.0 * x, 0.3, 0.0),
            Domain::real_line(),
            (-1.0, 1.0),
        );
        let h = assemble_hamiltonian(&v, &g).unwrap();
        let d = h.to_dense();
        let x: Vec<f64> = (0..h.dim()).map(|i| (i as f64 * 0.37).sin()).collect();
        let y = h.matvec(&x);
        for i in 0..h.dim() {
            let s: f64 = (0..h.dim()).map(|j| d[i][j] * x[j]).sum();
            assert!((s - y[i]).abs() < 1e-10);
            for j in 0..h.dim() {
                assert_eq!(d[i][j], d[j][i]);
            }
        }
    }

    #[test]
    fn scalar_layout_uses_one_channel() {
        let g = Grid::uniform(-1.0, 1.0, 20).unwrap();
        let v = MatrixFunction::zero(Domain::real_line(), (-1.0, 1.0), Layout::Scalar);
        let h = assemble_hamiltonian(&v, &g).unwrap();
        assert_eq!(h.dim(), 18);
    }

    #[test]
    fn grid_outside_domain_is_rejected() {
        let g = Grid::uniform(-1.0, 1.0, 20).unwrap();
        let v = MatrixFunction::zero(Domain::half_line(), (0.1, 1.0), Layout::Coupled);
        assert!(matches!(assemble_hamiltonian(&v, &g), Err(Error::Grid(_))));
    }
}
