// Copyright 2026 emvisc developers
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! Complex 3×3 tensors.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major complex 3×3 matrix; axes ordered (x, y, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tensor3(pub [[Complex64; 3]; 3]);

impl Default for Tensor3 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Tensor3 {
    pub fn zero() -> Self {
        Self([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diagonal(ONE, ONE, ONE)
    }

    pub fn scalar(s: Complex64) -> Self {
        Self::diagonal(s, s, s)
    }

    pub fn diagonal(x: Complex64, y: Complex64, z: Complex64) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = x;
        m.0[1][1] = y;
        m.0[2][2] = z;
        m
    }

    pub fn from_real(m: [[f64; 3]; 3]) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = Complex64::new(m[i][j], 0.0);
            }
        }
        t
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        let mut t = *self;
        for row in t.0.iter_mut() {
            for c in row.iter_mut() {
                *c = c.conj();
            }
        }
        t
    }

    /// Hermitian adjoint.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut t = *self;
        for row in t.0.iter_mut() {
            for c in row.iter_mut() {
                *c *= s;
            }
        }
        t
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// `Tr[self · other]` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let mut s = ZERO;
        for i in 0..3 {
            for j in 0..3 {
                s += self.0[i][j] * other.0[j][i];
            }
        }
        s
    }

    /// `(T - T†)/(2i)`, the anti-Hermitian part divided by `i`.
    pub fn im_hermitian(&self) -> Self {
        let d = *self - self.adjoint();
        d.scale(Complex64::new(0.0, -0.5))
    }

    /// `(T + Tᵀ)/2`.
    pub fn symmetric_part(&self) -> Self {
        (*self + self.transpose()).scale_re(0.5)
    }

    /// `(T - Tᵀ)/2`.
    pub fn antisymmetric_part(&self) -> Self {
        (*self - self.transpose()).scale_re(0.5)
    }

    pub fn determinant(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Inverse by cofactors; `None` if the matrix is numerically singular.
    pub fn inverse(&self) -> Option<Self> {
        let m = &self.0;
        let det = self.determinant();
        let scale = self.max_abs();
        if !(det.norm() > 1e-300 && det.norm() > f64::EPSILON * scale.powi(3) * 1e-3) {
            return None;
        }
        let mut inv = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let (i1, i2) = ((j + 1) % 3, (j + 2) % 3);
                let (j1, j2) = ((i + 1) % 3, (i + 2) % 3);
                inv.0[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / det;
            }
        }
        Some(inv)
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest element-wise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }
}

impl Add for Tensor3 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl Sub for Tensor3 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..3 {
            for j in 0..3 {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl Neg for Tensor3 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl Mul for Tensor3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut p = Self::zero();
        for i in 0..3 {
            for k in 0..3 {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..3 {
                    p.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        p
    }
}
