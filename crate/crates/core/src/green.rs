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


//! Quasi-static Green tensor of a planar surface in the mixed
//! `(k_x = q, k_y, z)` representation, integrated over `k_y`.
//!
//! With `x = 2|q|z` the non-zero entries of `ε₀K(q)` are
//!
//! ```text
//! xx = q² K0(x) / 2π          yy = |q| K1(x) / 4πz
//! zz = xx + yy                xz = -i s,  zx = +i s,   s = q|q| K1(x) / 2π
//! ```
//!
//! and the scattered field is `G = r(ω) K(q)`. Units: nm⁻², with the
//! `dk_y/2π` measure already applied.

use crate::error::{Error, Result};
use crate::material::Material;
use crate::quadrature::{integrate, Axis, Rule};
use crate::special::bessel_k01;
use crate::tensor::Tensor3;
use crate::units::HBAR_C_EV_NM;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// How the `k_y` integral is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelBackend {
    /// Closed form in modified Bessel functions.
    #[default]
    Bessel,
    /// Direct adaptive quadrature over `k_y` (slow, for cross-checks).
    Numeric,
}

/// Which part of the kernel is retained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelProjection {
    #[default]
    Full,
    /// Diagonal (transverse-symmetric) part only.
    Diagonal,
    /// Off-diagonal spin part only.
    Spin,
}

/// `ε₀K(q)` entries. `spin_xz` and `spin_zx` coincide for the physical
/// kernel; they are separate so that a deliberately broken kernel can be
/// built for mutation tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moment<T> {
    pub xx: T,
    pub yy: T,
    pub zz: T,
    pub spin_xz: T,
    pub spin_zx: T,
}

pub type KernelEntries = Moment<f64>;

impl Moment<f64> {
    pub fn zero() -> Self {
        Self {
            xx: 0.0,
            yy: 0.0,
            zz: 0.0,
            spin_xz: 0.0,
            spin_zx: 0.0,
        }
    }

    /// Tensor `[[xx, 0, -i s], [0, yy, 0], [i s', 0, zz]]`.
    pub fn to_tensor(&self) -> Tensor3 {
        let c = |v: f64| Complex64::new(v, 0.0);
        let mut t = Tensor3::diagonal(c(self.xx), c(self.yy), c(self.zz));
        t.0[0][2] = Complex64::new(0.0, -self.spin_xz);
        t.0[2][0] = Complex64::new(0.0, self.spin_zx);
        t
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            xx: self.xx * s,
            yy: self.yy * s,
            zz: self.zz * s,
            spin_xz: self.spin_xz * s,
            spin_zx: self.spin_zx * s,
        }
    }

    pub fn to_array(&self) -> [f64; 5] {
        [self.xx, self.yy, self.zz, self.spin_xz, self.spin_zx]
    }

    pub fn from_slice(a: &[f64]) -> Self {
        Self {
            xx: a[0],
            yy: a[1],
            zz: a[2],
            spin_xz: a[3],
            spin_zx: a[4],
        }
    }

    /// `Tr[self(q̃) · other(q)]` for two kernel-shaped real moments.
    pub fn trace_product(&self, other: &Self) -> f64 {
        self.xx * other.xx
            + self.yy * other.yy
            + self.zz * other.zz
            + self.spin_xz * other.spin_zx
            + self.spin_zx * other.spin_xz
    }

    /// Kernel-shaped transpose: swaps the sign of the spin entries.
    pub fn transpose(&self) -> Self {
        Self {
            spin_xz: -self.spin_zx,
            spin_zx: -self.spin_xz,
            ..*self
        }
    }
}

impl Moment<Complex64> {
    pub fn to_tensor(&self) -> Tensor3 {
        let i = Complex64::new(0.0, 1.0);
        let mut t = Tensor3::diagonal(self.xx, self.yy, self.zz);
        t.0[0][2] = -i * self.spin_xz;
        t.0[2][0] = i * self.spin_zx;
        t
    }

    pub fn to_array(&self) -> [f64; 10] {
        [
            self.xx.re,
            self.xx.im,
            self.yy.re,
            self.yy.im,
            self.zz.re,
            self.zz.im,
            self.spin_xz.re,
            self.spin_xz.im,
            self.spin_zx.re,
            self.spin_zx.im,
        ]
    }

    pub fn from_slice(a: &[f64]) -> Self {
        let c = |k: usize| Complex64::new(a[2 * k], a[2 * k + 1]);
        Self {
            xx: c(0),
            yy: c(1),
            zz: c(2),
            spin_xz: c(3),
            spin_zx: c(4),
        }
    }
}

/// `ε₀K(q)` at a fixed atom-surface distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarKernel {
    distance_nm: f64,
    pub backend: KernelBackend,
    pub projection: KernelProjection,
    /// Multiplies the `zx` spin entry; `-1` breaks Hermiticity on purpose.
    pub zx_sign: f64,
}

/// `2|q|z` beyond which the kernel is treated as zero.
pub const KERNEL_CUTOFF: f64 = 80.0;

impl PlanarKernel {
    pub fn new(distance_nm: f64) -> Result<Self> {
        if !(distance_nm > 0.0 && distance_nm.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "atom-surface distance must be positive, got {distance_nm} nm"
            )));
        }
        Ok(Self {
            distance_nm,
            backend: KernelBackend::Bessel,
            projection: KernelProjection::Full,
            zx_sign: 1.0,
        })
    }

    pub fn with_backend(mut self, backend: KernelBackend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_projection(mut self, projection: KernelProjection) -> Self {
        self.projection = projection;
        self
    }

    pub fn distance(&self) -> f64 {
        self.distance_nm
    }

    /// Largest |q| worth integrating over.
    pub fn q_max(&self) -> f64 {
        KERNEL_CUTOFF / (2.0 * self.distance_nm)
    }

    /// Natural wave-number scale `1/(2z)`.
    pub fn q_scale(&self) -> f64 {
        1.0 / (2.0 * self.distance_nm)
    }

    /// `ε₀K(q)` entries.
    pub fn entries(&self, q: f64) -> KernelEntries {
        let (xx, yy, s) = match self.backend {
            KernelBackend::Bessel => self.bessel_entries(q),
            KernelBackend::Numeric => self.numeric_entries(q),
        };
        let (diag, spin) = match self.projection {
            KernelProjection::Full => (1.0, 1.0),
            KernelProjection::Diagonal => (1.0, 0.0),
            KernelProjection::Spin => (0.0, 1.0),
        };
        Moment {
            xx: diag * xx,
            yy: diag * yy,
            zz: diag * (xx + yy),
            spin_xz: spin * s,
            spin_zx: spin * s * self.zx_sign,
        }
    }

    fn bessel_entries(&self, q: f64) -> (f64, f64, f64) {
        let z = self.distance_nm;
        let aq = q.abs();
        if aq == 0.0 {
            return (0.0, 1.0 / (8.0 * PI * z * z), 0.0);
        }
        let x = 2.0 * aq * z;
        if x > 700.0 {
            return (0.0, 0.0, 0.0);
        }
        let (k0, k1) = bessel_k01(x);
        (
            q * q * k0 / (2.0 * PI),
            aq * k1 / (4.0 * PI * z),
            q * aq * k1 / (2.0 * PI),
        )
    }

    fn numeric_entries(&self, q: f64) -> (f64, f64, f64) {
        let z = self.distance_nm;
        let aq = q.abs();
        let axis = Axis::semi_infinite(0.0).with_breakpoints([0.5 / z, aq, 4.0 / z]);
        let rule = Rule::rel(1e-13);
        let est = integrate(&axis, &rule, |ky: f64| {
            let k = (q * q + ky * ky).sqrt();
            let e = (-2.0 * k * z).exp();
            if k == 0.0 {
                return [0.0, 0.0, 0.0];
            }
            // factor 2 from folding k_y, 1/2π from the measure, 1/2k from the propagator
            let w = e / (2.0 * PI * k);
            [w * q * q, w * ky * ky, w * q * k]
        })
        .expect("finite integrand");
        (est.value[0], est.value[1], est.value[2])
    }

    /// `ε₀K(q)` as a tensor.
    pub fn tensor(&self, q: f64) -> Tensor3 {
        self.entries(q).to_tensor()
    }

    /// Scattered Green tensor `ε₀G(q, ω) = r(ω) ε₀K(q)`.
    pub fn scattered(&self, material: &Material, q: f64, energy_ev: f64) -> Result<Tensor3> {
        Ok(self.tensor(q).scale(material.fresnel(energy_ev)?))
    }

    /// Dissipative part `ε₀G_Im(q, ω) = Im r(ω) ε₀K(q)`.
    pub fn dissipative(&self, material: &Material, q: f64, energy_ev: f64) -> Result<Tensor3> {
        Ok(self.tensor(q).scale_re(material.fresnel(energy_ev)?.im))
    }

    /// Closed-form `∫ dq/2π ε₀K(q) = diag(1, 1, 2)/(32π z³)`.
    pub fn sum_rule(&self) -> Tensor3 {
        let s = 1.0 / (32.0 * PI * self.distance_nm.powi(3));
        Tensor3::from_real([[s, 0.0, 0.0], [0.0, s, 0.0], [0.0, 0.0, 2.0 * s]])
    }

    /// `∫ dq/2π w(q) ε₀K(q)` by quadrature for a real weight.
    pub fn weighted_moment(&self, rule: &Rule, w: impl Fn(f64) -> f64) -> Result<Moment<f64>> {
        let axis = Axis::finite(0.0, self.q_max()).with_breakpoints([self.q_scale()]);
        let est = integrate(&axis, rule, |q: f64| {
            let k = self.entries(q);
            let (wp, wm) = (w(q), w(-q));
            let even = (wp + wm) / (2.0 * PI);
            let odd = (wp - wm) / (2.0 * PI);
            [k.xx * even, k.yy * even, k.zz * even, k.spin_xz * odd, k.spin_zx * odd]
        })?
        .require_converged()?;
        Ok(Moment::<f64>::from_slice(&est.value))
    }
}

/// Real `L_y` spin generator, `[L_y]_xz = i`, `[L_y]_zx = -i`.
pub fn spin_generator() -> Tensor3 {
    let mut t = Tensor3::zero();
    t.0[0][2] = Complex64::new(0.0, 1.0);
    t.0[2][0] = Complex64::new(0.0, -1.0);
    t
}

/// Splits a tensor into its transpose-symmetric part `Σ` and the
/// coefficient `s_y` of the antisymmetric `xz` block, `T = Σ + s_y L_y`.
pub fn decompose_sigma_spin(t: &Tensor3) -> (Tensor3, Complex64) {
    let sigma = t.symmetric_part();
    let anti = t.antisymmetric_part();
    (sigma, anti.get(0, 2) * Complex64::new(0.0, -1.0))
}

/// `ε₀ Im G₀(r, r) = (ω/c)³/6π` of free space, nm⁻³.
pub fn vacuum_im_green_local(energy_ev: f64) -> f64 {
    (energy_ev / HBAR_C_EV_NM).powi(3) / (6.0 * PI)
}
