//! Real 2×2 matrices and two-component vectors.

use std::ops::{Add, Mul, Neg, Sub};

/// Row-major real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub type Vec2 = [f64; 2];

impl Mat2 {
    pub const ZERO: Mat2 = Mat2::new(0.0, 0.0, 0.0, 0.0);
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    pub const SIGMA1: Mat2 = Mat2::new(0.0, 1.0, 1.0, 0.0);
    pub const SIGMA3: Mat2 = Mat2::new(1.0, 0.0, 0.0, -1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    /// `s0·I + s1·σ₁ + s3·σ₃`, the only shape the catalog ever produces.
    pub fn pauli(s0: f64, s1: f64, s3: f64) -> Self {
        Mat2::new(s0 + s3, s1, s1, s0 - s3)
    }

    pub fn diag(d0: f64, d1: f64) -> Self {
        Mat2::new(d0, 0.0, 0.0, d1)
    }

    pub fn scale(self, s: f64) -> Self {
        Mat2::new(s * self.a, s * self.b, s * self.c, s * self.d)
    }

    pub fn transpose(self) -> Self {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn trace(self) -> f64 {
        self.a + self.d
    }

    pub fn det(self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(self) -> f64 {
        (self.a.abs() + self.b.abs()).max(self.c.abs() + self.d.abs())
    }

    pub fn max_abs(self) -> f64 {
        self.a
            .abs()
            .max(self.b.abs())
            .max(self.c.abs())
            .max(self.d.abs())
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn inverse(self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(Mat2::new(
            self.d / det,
            -self.b / det,
            -self.c / det,
            self.a / det,
        ))
    }

    /// Eigen-decomposition of the symmetric part, eigenvalues ascending.
    /// Columns of the returned pair are unit eigenvectors.
    pub fn sym_eigen(self) -> ([f64; 2], [Vec2; 2]) {
        let p = 0.5 * (self.a + self.d);
        let q = 0.5 * (self.a - self.d);
        let r = 0.5 * (self.b + self.c);
        let rad = q.hypot(r);
        let vals = [p - rad, p + rad];
        if rad == 0.0 {
            return (vals, [[1.0, 0.0], [0.0, 1.0]]);
        }
        // Rotation angle that diagonalizes [[q, r], [r, -q]].
        let theta = 0.5 * r.atan2(q);
        let (s, c) = theta.sin_cos();
        (vals, [[-s, c], [c, s]])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.scale(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let s1 = Mat2::SIGMA1;
        let s3 = Mat2::SIGMA3;
        assert_eq!(s1 * s1, Mat2::IDENTITY);
        assert_eq!(s3 * s3, Mat2::IDENTITY);
        assert_eq!(s1 * s3 + s3 * s1, Mat2::ZERO);
    }

    #[test]
    fn sym_eigen_reconstructs() {
        let m = Mat2::pauli(0.3, -1.2, 0.7);
        let (vals, vecs) = m.sym_eigen();
        assert!(vals[0] <= vals[1]);
        for k in 0..2 {
            let mv = m.apply(vecs[k]);
            assert!((mv[0] - vals[k] * vecs[k][0]).abs() < 1e-14);
            assert!((mv[1] - vals[k] * vecs[k][1]).abs() < 1e-14);
        }
    }

    #[test]
    fn sym_eigen_diagonal_input() {
        let (vals, vecs) = Mat2::diag(2.0, -1.0).sym_eigen();
        assert_eq!(vals, [-1.0, 2.0]);
        assert!((vecs[0][1].abs() - 1.0).abs() < 1e-15);
    }
}
