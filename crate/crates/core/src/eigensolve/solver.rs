//! k lowest eigenpairs of the block-tridiagonal Hamiltonian: eigenvalues by
//! Sturm-count bisection, eigenvectors by inverse iteration on a banded LU
//! factorization with partial pivoting.

use crate::error::{Error, Result};
use crate::gridops::{OperatorMatrix, WaveFunction};
use crate::mat2::Mat2;

/// Largest allowed residual ‖Hψ − Eψ‖/‖ψ‖.
pub const RESIDUAL_TOL: f64 = 1e-8;
const MAX_INVERSE_STEPS: usize = 12;
const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub energy: f64,
    /// Grid-normalized, zero at both ends.
    pub state: WaveFunction,
    pub residual: f64,
}

/// Number of eigenvalues strictly below σ (Sylvester inertia of the block
/// LDLᵀ factorization of H − σI).
pub fn sturm_count(h: &OperatorMatrix, sigma: f64) -> usize {
    let o2 = h.off() * h.off();
    let tiny = f64::EPSILON * h.off().abs();
    let mut count = 0;
    if h.channels() == 1 {
        let mut s_prev = f64::INFINITY;
        for d in h.diag_blocks() {
            let mut s = d.a - sigma - if s_prev.is_finite() { o2 / s_prev } else { 0.0 };
            if s == 0.0 {
                s = -tiny;
            }
            if s < 0.0 {
                count += 1;
            }
            s_prev = s;
        }
        return count;
    }
    let mut inv_prev = Mat2::ZERO;
    for d in h.diag_blocks() {
        let mut s = *d - Mat2::IDENTITY * sigma - inv_prev * o2;
        let sym = 0.5 * (s.b + s.c);
        s.b = sym;
        s.c = sym;
        let mut det = s.det();
        if det == 0.0 {
            det = -tiny * tiny;
        }
        if det < 0.0 {
            count += 1;
        } else if s.a + s.d < 0.0 {
            count += 2;
        }
        inv_prev = Mat2::new(s.d / det, -s.b / det, -s.c / det, s.a / det);
    }
    count
}

/// Eigenvalue with index j (0-based, ascending) by bisection.
fn bisect(h: &OperatorMatrix, j: usize, lo: f64, hi: f64) -> f64 {
    let scale = lo.abs().max(hi.abs());
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 4.0 * f64::EPSILON * mid.abs() + 1e-15 * scale || mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(h, mid) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Eigenvalues 0..k of H by bisection.
pub fn lowest_eigenvalues(h: &OperatorMatrix, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > h.dim() {
        return Err(Error::Solver(format!(
            "cannot take {k} eigenvalues of a {}-dimensional matrix",
            h.dim()
        )));
    }
    let (glo, ghi) = h.gershgorin();
    let pad = 1e-12 * glo.abs().max(ghi.abs()).max(1.0);
    let (glo, ghi) = (glo - pad, ghi + pad);
    let mut out = Vec::with_capacity(k);
    let mut lo = glo;
    for j in 0..k {
        let e = bisect(h, j, lo, ghi);
        if !e.is_finite() {
            return Err(Error::Solver(
                "bisection produced a non-finite value".into(),
            ));
        }
        out.push(e);
        lo = glo.max(e - pad);
    }
    Ok(out)
}

/// LU factors of a banded matrix with kl sub- and ku super-diagonals.
struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
    piv: Vec<usize>,
}

impl BandLu {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.kl - i)
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.idx(i, j)]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    /// Factors H − σI.
    fn shifted(h: &OperatorMatrix, sigma: f64) -> BandLu {
        let c = h.channels();
        let n = h.dim();
        let (kl, ku) = (c, c);
        let width = 2 * kl + ku + 1;
        let mut lu = BandLu {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
            piv: vec![0; n],
        };
        for (i, d) in h.diag_blocks().iter().enumerate() {
            if c == 1 {
                lu.set(i, i, d.a - sigma);
            } else {
                let r = 2 * i;
                lu.set(r, r, d.a - sigma);
                lu.set(r, r + 1, d.b);
                lu.set(r + 1, r, d.c);
                lu.set(r + 1, r + 1, d.d - sigma);
            }
            if i + 1 < h.blocks() {
                for k in 0..c {
                    lu.set(c * i + k, c * (i + 1) + k, h.off());
                    lu.set(c * (i + 1) + k, c * i + k, h.off());
                }
            }
        }
        let (glo, ghi) = h.gershgorin();
        let floor = f64::EPSILON * glo.abs().max(ghi.abs()).max(1.0);
        lu.factor(floor);
        lu
    }

    fn factor(&mut self, floor: f64) {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + kl + ku).min(n - 1);
            let mut p = k;
            for i in k + 1..=last_row {
                if self.get(i, k).abs() > self.get(p, k).abs() {
                    p = i;
                }
            }
            self.piv[k] = p;
            if p != k {
                for j in k..=last_col {
                    let (a, b) = (self.idx(k, j), self.idx(p, j));
                    self.data.swap(a, b);
                }
            }
            if self.get(k, k).abs() < floor {
                self.set(k, k, if self.get(k, k) < 0.0 { -floor } else { floor });
            }
            let pivot = self.get(k, k);
            for i in k + 1..=last_row {
                let l = self.get(i, k) / pivot;
                self.set(i, k, l);
                if l != 0.0 {
                    for j in k + 1..=last_col {
                        let v = self.get(i, j) - l * self.get(k, j);
                        self.set(i, j, v);
                    }
                }
            }
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        for k in 0..n {
            b.swap(k, self.piv[k]);
            for i in k + 1..=(k + kl).min(n - 1) {
                b[i] -= self.get(i, k) * b[k];
            }
        }
        for k in (0..n).rev() {
            let mut s = b[k];
            for j in k + 1..=(k + kl + ku).min(n - 1) {
                s -= self.get(k, j) * b[j];
            }
            b[k] = s / self.get(k, k);
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 && n.is_finite() {
        v.iter_mut().for_each(|x| *x /= n);
    }
    n
}

/// Deterministic start vector.
fn start_vector(len: usize, seed: u64) -> Vec<f64> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0xD1B5_4A32_D192_ED03;
    (0..len)
        .map(|_| {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^= z >> 31;
            (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}

fn residual(h: &OperatorMatrix, v: &[f64], e: f64) -> f64 {
    let hv = h.matvec(v);
    let r: f64 = hv.iter().zip(v).map(|(a, b)| (a - e * b).powi(2)).sum();
    (r / dot(v, v)).sqrt()
}

/// The k algebraically smallest eigenpairs, ascending.
pub fn lowest_eigenpairs(h: &OperatorMatrix, k: usize) -> Result<Vec<Eigenpair>> {
    let values = lowest_eigenvalues(h, k)?;
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut out = Vec::with_capacity(k);
    for (j, &lam) in values.iter().enumerate() {
        let lu = BandLu::shifted(h, lam);
        let mut v = start_vector(h.dim(), j as u64 + 1);
        let mut energy = lam;
        let mut res = f64::INFINITY;
        for _ in 0..MAX_INVERSE_STEPS {
            lu.solve(&mut v);
            // Deflate against the vectors already found; keeps degenerate
            // clusters orthogonal.
            for _ in 0..2 {
                for u in &vectors {
                    let s = dot(u, &v);
                    v.iter_mut().zip(u).for_each(|(x, y)| *x -= s * y);
                }
            }
            if !(normalize(&mut v) > 0.0) {
                return Err(Error::Solver(format!(
                    "inverse iteration collapsed for eigenvalue {j}"
                )));
            }
            energy = dot(&v, &h.matvec(&v));
            res = residual(h, &v, energy);
            if res < 1e-3 * RESIDUAL_TOL {
                break;
            }
        }
        if !(res < RESIDUAL_TOL) {
            return Err(Error::Solver(format!(
                "eigenvector {j} did not converge (residual {res:e} near {lam})"
            )));
        }
        let state = h.extend(&v).normalized()?;
        vectors.push(v);
        out.push(Eigenpair {
            energy,
            state,
            residual: res,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Domain, Layout, MatrixFunction};
    use crate::gridops::{assemble_hamiltonian, Grid};

    #[test]
    fn sturm_counts_match_laplacian() {
        let n = 50;
        let g = Grid::uniform(0.0, std::f64::consts::PI, n + 2).unwrap();
        let v = MatrixFunction::zero(Domain::real_line(), (0.0, 1.0), Layout::Scalar);
        let h = assemble_hamiltonian(&v, &g).unwrap();
        let hh = g.spacing() * g.spacing();
        let exact: Vec<f64> = (1..=n)
            .map(|j| (2.0 - 2.0 * (j as f64 * std::f64::consts::PI / (n + 1) as f64).cos()) / hh)
            .collect();
        for (j, e) in exact.iter().enumerate() {
            assert_eq!(sturm_count(&h, e - 1e-9), j);
            assert_eq!(sturm_count(&h, e + 1e-9), j + 1);
        }
        let vals = lowest_eigenvalues(&h, n).unwrap();
        for (a, b) in vals.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-10 * b.abs());
        }
    }

    #[test]
    fn band_lu_solves() {
        let g = Grid::uniform(-1.0, 1.0, 30).unwrap();
        let v = MatrixFunction::new(
            |x| Mat2::pauli(x, 2.0 * x, 0.5),
            |_| Mat2::pauli(1.0, 2.0, 0.0),
            Domain::real_line(),
            (-1.0, 1.0),
        );
        let h = assemble_hamiltonian(&v, &g).unwrap();
        let lu = BandLu::shifted(&h, 3.7);
        let x: Vec<f64> = (0..h.dim()).map(|i| (i as f64).cos()).collect();
        let mut b: Vec<f64> = h
            .matvec(&x)
            .iter()
            .zip(&x)
            .map(|(a, c)| a - 3.7 * c)
            .collect();
        lu.solve(&mut b);
        for (a, c) in b.iter().zip(&x) {
            assert!((a - c).abs() < 1e-9);
        }
    }
}
