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


//! Non-equilibrium field and dipole spectra of the moving atom.
//!
//! Reduced units: `A = α/ε₀ = 4π a` (nm³), the field spectrum
//! `κ̂ = ε₀κ/ħ` (nm⁻³) and the dipole spectrum `Ŝ = A κ̂ A† = S/(ħε₀)`.

use crate::doppler::{bose, DopplerContext, ShiftedMoments};
use crate::error::{Error, Result};
use crate::green::{vacuum_im_green_local, Moment};
use crate::polarizability::{dress, Atom};
use crate::tensor::Tensor3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;

/// Occupation statistics of the field modes seen by the atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistics {
    /// Doppler-shifted occupation `n(ω + q v)`.
    #[default]
    Full,
    /// Local thermal equilibrium: the unshifted `n(ω)`.
    Lte,
}

/// Treatment of the atomic response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    /// Velocity-dependent polarizability dressed by the surface.
    #[default]
    Dressed,
    /// Bare isotropic polarizability, lowest order in `α`.
    Leading,
}

impl Statistics {
    pub fn name(&self) -> &'static str {
        match self {
            Statistics::Full => "full",
            Statistics::Lte => "lte",
        }
    }
}

impl FromStr for Statistics {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Statistics::Full),
            "lte" => Ok(Statistics::Lte),
            _ => Err(Error::InvalidParameter(format!("unknown mode `{s}` (full|lte)"))),
        }
    }
}

impl Order {
    pub fn name(&self) -> &'static str {
        match self {
            Order::Dressed => "dressed",
            Order::Leading => "leading",
        }
    }
}

impl FromStr for Order {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dressed" => Ok(Order::Dressed),
            "leading" => Ok(Order::Leading),
            _ => Err(Error::InvalidParameter(format!("unknown order `{s}` (dressed|leading)"))),
        }
    }
}

/// Reduced polarizability `A` and its dissipative part `A_Im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Response {
    pub coupling: Tensor3,
    pub dissipative: Tensor3,
}

/// Bose–Einstein occupation for `ħω` and `k_B T` in eV.
pub fn bose_n(energy_ev: f64, kt: f64) -> f64 {
    bose(energy_ev, kt)
}

/// Atomic response at energy `e` from precomputed moments.
///
/// In leading order the dissipative part is taken from the second-kind
/// fluctuation–dissipation relation, `A_Im = |A_B|² ∫ ε₀G_Im`.
pub fn response(
    atom: &Atom,
    order: Order,
    energy_ev: f64,
    linewidth_ev: f64,
    moments: &ShiftedMoments,
    vacuum: bool,
) -> Result<Response> {
    match order {
        Order::Dressed => {
            let a = dress(atom, energy_ev, linewidth_ev, &moments.dressing, vacuum)?;
            let coupling = a.scale_re(4.0 * PI);
            Ok(Response {
                coupling,
                dissipative: coupling.im_hermitian(),
            })
        }
        Order::Leading => {
            let ab = atom.bare(energy_ev, linewidth_ev) * (4.0 * PI);
            let mut m0 = moments.m0.to_tensor();
            if vacuum {
                m0 = m0 + Tensor3::scalar(Complex64::new(vacuum_im_green_local(energy_ev), 0.0));
            }
            Ok(Response {
                coupling: Tensor3::scalar(ab),
                dissipative: m0.scale_re(ab.norm_sqr()),
            })
        }
    }
}

/// Field spectrum `κ̂(ω)` seen by the moving atom.
pub fn kappa_from_moments(moments: &ShiftedMoments, energy_ev: f64, kt: f64, stats: Statistics) -> Tensor3 {
    match stats {
        Statistics::Full => add(&moments.m0, &moments.n0).to_tensor().scale_re(1.0 / PI),
        Statistics::Lte => moments
            .m0
            .to_tensor()
            .scale_re((1.0 + bose(energy_ev, kt)) / PI),
    }
}

/// Field spectrum at energy `e` (quadrature over the Doppler-shifted modes).
pub fn kappa_v(ctx: &DopplerContext, energy_ev: f64, stats: Statistics) -> Result<Tensor3> {
    let m = ctx.moments(energy_ev)?;
    Ok(kappa_from_moments(&m, energy_ev, ctx.kt, stats))
}

/// Dipole spectrum `Ŝ = A κ̂ A†`.
pub fn dipole_spectrum(resp: &Response, kappa: &Tensor3) -> Tensor3 {
    resp.coupling * *kappa * resp.coupling.adjoint()
}

pub(crate) fn add(a: &Moment<f64>, b: &Moment<f64>) -> Moment<f64> {
    Moment {
        xx: a.xx + b.xx,
        yy: a.yy + b.yy,
        zz: a.zz + b.zz,
        spin_xz: a.spin_xz + b.spin_xz,
        spin_zx: a.spin_zx + b.spin_zx,
    }
}
