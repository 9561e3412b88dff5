use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::mat2::Vec2;

use super::grid::Grid;

/// Two-component function sampled on every node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Grid,
    phi: Vec<f64>,
    xi: Vec<f64>,
}

impl WaveFunction {
    pub fn new(grid: Grid, phi: Vec<f64>, xi: Vec<f64>) -> Result<Self> {
        if phi.len() != grid.n() || xi.len() != grid.n() {
            return Err(Error::Grid(format!(
                "component lengths {}/{} do not match {} nodes",
                phi.len(),
                xi.len(),
                grid.n()
            )));
        }
        Ok(WaveFunction { grid, phi, xi })
    }

    pub fn zeros(grid: &Grid) -> Self {
        let n = grid.n();
        WaveFunction {
            grid: grid.clone(),
            phi: vec![0.0; n],
            xi: vec![0.0; n],
        }
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> Vec2) -> Self {
        let (phi, xi) = grid
            .nodes()
            .iter()
            .map(|&x| {
                let v = f(x);
                (v[0], v[1])
            })
            .unzip();
        WaveFunction {
            grid: grid.clone(),
            phi,
            xi,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn phi_mut(&mut self) -> &mut [f64] {
        &mut self.phi
    }

    pub fn xi_mut(&mut self) -> &mut [f64] {
        &mut self.xi
    }

    pub fn at(&self, i: usize) -> Vec2 {
        [self.phi[i], self.xi[i]]
    }

    pub fn set(&mut self, i: usize, v: Vec2) {
        self.phi[i] = v[0];
        self.xi[i] = v[1];
    }

    pub fn is_finite(&self) -> bool {
        self.phi.iter().chain(&self.xi).all(|v| v.is_finite())
    }

    /// Σ (φ² + ξ²)·h over all nodes.
    pub fn norm_sq(&self) -> f64 {
        let s: f64 = self
            .phi
            .iter()
            .zip(&self.xi)
            .map(|(a, b)| a * a + b * b)
            .sum();
        s * self.grid.spacing()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn inner(&self, other: &WaveFunction) -> f64 {
        let s: f64 = self
            .phi
            .iter()
            .zip(&self.xi)
            .zip(other.phi.iter().zip(&other.xi))
            .map(|((a, b), (c, d))| a * c + b * d)
            .sum();
        s * self.grid.spacing()
    }

    pub fn max_abs(&self) -> f64 {
        self.phi
            .iter()
            .chain(&self.xi)
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn scale(&mut self, s: f64) {
        self.phi
            .iter_mut()
            .chain(self.xi.iter_mut())
            .for_each(|v| *v *= s);
    }

    /// self += s·other.
    pub fn axpy(&mut self, s: f64, other: &WaveFunction) {
        for (a, b) in self.phi.iter_mut().zip(&other.phi) {
            *a += s * b;
        }
        for (a, b) in self.xi.iter_mut().zip(&other.xi) {
            *a += s * b;
        }
    }

    /// Unit norm with the sign convention of [`WaveFunction::fix_sign`].
    pub fn normalized(mut self) -> Result<Self> {
        if !self.is_finite() {
            return Err(Error::Normalization("non-finite samples".into()));
        }
        let n = self.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Normalization(format!(
                "norm {n} cannot be normalized"
            )));
        }
        self.scale(1.0 / n);
        self.fix_sign();
        Ok(self)
    }

    /// Makes the first appreciable sample of φ positive (of ξ if φ vanishes).
    pub fn fix_sign(&mut self) {
        let pick = |v: &[f64]| -> Option<f64> {
            let m = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
            if m == 0.0 {
                return None;
            }
            v.iter().copied().find(|x| x.abs() > 1e-3 * m)
        };
        let lead = pick(&self.phi).or_else(|| pick(&self.xi));
        if let Some(s) = lead {
            if s < 0.0 {
                self.scale(-1.0);
            }
        }
    }

    /// CSV with header `x,phi,xi`, values in shortest exact-ish exponent form.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "x,phi,xi")?;
        for (i, x) in self.grid.nodes().iter().enumerate() {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", x, self.phi[i], self.xi[i])?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii output")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_sign() {
        let g = Grid::uniform(-5.0, 5.0, 401).unwrap();
        let w = WaveFunction::from_fn(&g, |x| [-(-x * x).exp(), 0.0])
            .normalized()
            .unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-14);
        assert!(w.phi()[200] > 0.0);
    }

    #[test]
    fn zero_function_is_rejected() {
        let g = Grid::uniform(0.0, 1.0, 32).unwrap();
        assert!(matches!(
            WaveFunction::zeros(&g).normalized(),
            Err(Error::Normalization(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let g = Grid::uniform(0.0, 1.0, 16).unwrap();
        let s = WaveFunction::from_fn(&g, |x| [x, 1.0]).to_csv_string();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "x,phi,xi");
        assert_eq!(lines.len(), 17);
        assert_eq!(lines[16].split(',').count(), 3);
    }
}
