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


//! Atomic polarizability: the bare single-resonance model and its dressing
//! by the surface (and optionally the vacuum) field.
//!
//! Values are polarizability volumes `a = α/(4πε₀)` in nm³.

use crate::doppler::DopplerContext;
use crate::error::{Error, Result};
use crate::green::{vacuum_im_green_local, Moment};
use crate::tensor::Tensor3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Two-level-like atom with a single dipole resonance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    /// Static polarizability volume `a₀` in nm³.
    pub static_volume_nm3: f64,
    /// Resonance energy `ħω_a` in eV.
    pub resonance_ev: f64,
}

/// Default numerical linewidth relative to the resonance energy.
pub const NUMERICAL_LINEWIDTH: f64 = 1e-6;

impl Atom {
    /// `a₀ = 47.28 Å³`, `ħω_a = 1.3 eV`.
    pub fn reference() -> Self {
        Self {
            static_volume_nm3: 0.04728,
            resonance_ev: 1.3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.static_volume_nm3 > 0.0 && self.static_volume_nm3.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "static polarizability must be positive, got {} nm^3",
                self.static_volume_nm3
            )));
        }
        if !(self.resonance_ev > 0.0 && self.resonance_ev.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "resonance energy must be positive, got {} eV",
                self.resonance_ev
            )));
        }
        Ok(())
    }

    /// Linewidth used to regularize the bare pole, eV.
    pub fn numerical_linewidth(&self) -> f64 {
        NUMERICAL_LINEWIDTH * self.resonance_ev
    }

    /// Bare polarizability `a₀ω_a²/(ω_a² - (ω + iγ/2)²)`.
    pub fn bare(&self, energy_ev: f64, linewidth_ev: f64) -> Complex64 {
        let wa2 = self.resonance_ev * self.resonance_ev;
        let w = Complex64::new(energy_ev, 0.5 * linewidth_ev);
        self.static_volume_nm3 * wa2 / (wa2 - w * w)
    }

    /// `1/a_B(ω)`, finite at the resonance.
    pub fn inverse_bare(&self, energy_ev: f64, linewidth_ev: f64) -> Complex64 {
        let wa2 = self.resonance_ev * self.resonance_ev;
        let w = Complex64::new(energy_ev, 0.5 * linewidth_ev);
        (wa2 - w * w) / (self.static_volume_nm3 * wa2)
    }
}

/// `a = [a_B⁻¹ - 4π D]⁻¹` for an integrated Green moment `D = ∫ dq/2π ε₀G`.
///
/// `vacuum` adds `i ε₀ Im G₀(ω)` on the diagonal.
pub fn dress(
    atom: &Atom,
    energy_ev: f64,
    linewidth_ev: f64,
    dressing: &Moment<Complex64>,
    vacuum: bool,
) -> Result<Tensor3> {
    let mut d = dressing.to_tensor();
    if vacuum {
        let g = Complex64::new(0.0, vacuum_im_green_local(energy_ev));
        d = d + Tensor3::scalar(g);
    }
    let m = Tensor3::scalar(atom.inverse_bare(energy_ev, linewidth_ev)) - d.scale_re(4.0 * PI);
    m.inverse().ok_or(Error::SingularDressing { energy_ev })
}

/// Dressed polarizability at energy `e` for an atom moving with the
/// velocity encoded in `ctx`.
pub fn alpha_dressed(
    atom: &Atom,
    ctx: &DopplerContext,
    energy_ev: f64,
    include_vacuum: bool,
) -> Result<Tensor3> {
    let mom = ctx.moments(energy_ev)?;
    dress(atom, energy_ev, 0.0, &mom.dressing, include_vacuum)
}

/// Hermitian dissipative part `(a - a†)/2i`.
pub fn alpha_im_hermitian(a: &Tensor3) -> Tensor3 {
    a.im_hermitian()
}
