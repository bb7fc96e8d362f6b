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


//! Spectral filter picture of the thermal viscosity.
//!
//! `μ_T = -∫ dω η(ω) T∂_Tϱ(ω)`: the slope of the Planck spectrum is
//! filtered by the joint atom-field spectral density `η` (SI, m·s).

use crate::error::{Error, Result};
use crate::force::{vacuum_im_polarizability, BlackbodyModel, ENERGY_CUTOFF};
use crate::green::{Moment, PlanarKernel};
use crate::material::Material;
use crate::polarizability::{dress, Atom};
use crate::quadrature::{try_integrate, Axis, Rule};
use crate::spectra::Order;
use crate::tensor::Tensor3;
use crate::units::{
    energy_to_angular, thermal_energy, volume_to_si_polarizability, C_M_S, EPS0_F_M, HBAR_J_S, NM,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `T∂_Tϱ(ω)` of the thermal Planck spectrum `ϱ = ħω³n(ω)/(π²c³)`, J·s/m³.
pub fn planck_derivative(energy_ev: f64, temperature_k: f64) -> f64 {
    if temperature_k <= 0.0 || energy_ev <= 0.0 {
        return 0.0;
    }
    let x = energy_ev / thermal_energy(temperature_k);
    if x > 700.0 {
        return 0.0;
    }
    let w = energy_to_angular(energy_ev);
    let s = (0.5 * x).sinh();
    HBAR_J_S * w.powi(3) / (PI * PI * C_M_S.powi(3)) * x / (4.0 * s * s)
}

/// `x = ħω/k_BT` of the maximum of `T∂_Tϱ`, the root of `4/x = coth(x/2)`.
pub fn planck_derivative_peak_x() -> f64 {
    let g = |x: f64| 4.0 / x - 1.0 / (0.5 * x).tanh();
    let (mut lo, mut hi) = (1.0, 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Location of the maximum of `T∂_Tϱ` in eV.
pub fn planck_derivative_peak(temperature_k: f64) -> f64 {
    planck_derivative_peak_x() * thermal_energy(temperature_k)
}

/// Wave-number moments `∫ dq/2π qⁿ ε₀K(q)`, n = 0, 1, 2, at one distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralKernel {
    pub distance_nm: f64,
    pub k0: Moment<f64>,
    pub k1: Moment<f64>,
    pub k2: Moment<f64>,
}

impl SpectralKernel {
    pub fn new(distance_nm: f64, rule: &Rule) -> Result<Self> {
        let k = PlanarKernel::new(distance_nm)?;
        Ok(Self {
            distance_nm,
            k0: k.weighted_moment(rule, |_| 1.0)?,
            k1: k.weighted_moment(rule, |q| q)?,
            k2: k.weighted_moment(rule, |q| q * q)?,
        })
    }
}

fn coupling_at_rest(atom: &Atom, material: &Material, sk: &SpectralKernel, e: f64, order: Order) -> Result<Tensor3> {
    match order {
        Order::Leading => Ok(Tensor3::scalar(
            atom.bare(e, atom.numerical_linewidth()) * (4.0 * PI),
        )),
        Order::Dressed => {
            let r = material.fresnel(e)?;
            let k = &sk.k0;
            let d = Moment {
                xx: r * k.xx,
                yy: r * k.yy,
                zz: r * k.zz,
                spin_xz: Complex64::new(0.0, 0.0),
                spin_zx: Complex64::new(0.0, 0.0),
            };
            Ok(dress(atom, e, 0.0, &d, false)?.scale_re(4.0 * PI))
        }
    }
}

/// `η(ω) = (2πc³/ω⁴) ∫∫ q(q - q̃) Tr[α G_Im(q̃) α† G_Im(q)]` for the atom at rest.
///
/// At `v = 0` the wave-number integrals factor into the moments of `sk`.
pub fn eta_full(
    atom: &Atom,
    material: &Material,
    sk: &SpectralKernel,
    energy_ev: f64,
    order: Order,
) -> Result<f64> {
    if energy_ev <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "spectral density needs a positive frequency, got {energy_ev} eV"
        )));
    }
    let a = coupling_at_rest(atom, material, sk, energy_ev, order)?;
    let ah = a.adjoint();
    let im_r = material.fresnel(energy_ev)?.im;
    let (k0, k1, k2) = (sk.k0.to_tensor(), sk.k1.to_tensor(), sk.k2.to_tensor());
    let tr = (a * k0 * ah).trace_product(&k2) - (a * k1 * ah).trace_product(&k1);
    let w = energy_to_angular(energy_ev);
    Ok(2.0 * PI * C_M_S.powi(3) / w.powi(4) * im_r * im_r * tr.re * 1e18)
}

/// Leading-order near-field form `(9c³/4πε₀²ω⁴)|α_B|² Im r²/(2z)⁸`.
pub fn eta_nearfield(atom: &Atom, material: &Material, z_nm: f64, energy_ev: f64) -> Result<f64> {
    let ab = atom.bare(energy_ev, atom.numerical_linewidth()).norm() * NM.powi(3);
    let alpha = 4.0 * PI * EPS0_F_M * ab;
    let im_r = material.fresnel(energy_ev)?.im;
    let w = energy_to_angular(energy_ev);
    let d = 2.0 * z_nm * NM;
    Ok(9.0 * C_M_S.powi(3) / (4.0 * PI * EPS0_F_M.powi(2) * w.powi(4)) * alpha * alpha * im_r * im_r
        / d.powi(8))
}

/// Low-frequency limit `9c³α₀²ρ²/(πω²(2z)⁸)`.
pub fn eta_lowfreq(atom: &Atom, rho_ohm_m: f64, z_nm: f64, energy_ev: f64) -> f64 {
    let alpha = volume_to_si_polarizability(atom.static_volume_nm3);
    let w = energy_to_angular(energy_ev);
    let d = 2.0 * z_nm * NM;
    9.0 * C_M_S.powi(3) * (alpha * rho_ohm_m).powi(2) / (PI * w * w * d.powi(8))
}

/// Free-space spectral density `ω Im α(ω)/(3c²ε₀)`.
pub fn eta_vacuum(atom: &Atom, energy_ev: f64, model: BlackbodyModel) -> f64 {
    let im_alpha = 4.0 * PI * EPS0_F_M * vacuum_im_polarizability(atom, energy_ev, model) * NM.powi(3);
    energy_to_angular(energy_ev) * im_alpha / (3.0 * C_M_S * C_M_S * EPS0_F_M)
}

fn filter_integral(temperature_k: f64, extra: &[f64], rel_tol: f64, eta: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    if temperature_k <= 0.0 {
        return Ok(0.0);
    }
    let kt = thermal_energy(temperature_k);
    let top = ENERGY_CUTOFF * kt;
    let mut b = vec![kt, 4.0 * kt, 15.0 * kt];
    b.extend_from_slice(extra);
    let axis = Axis::finite(0.0, top).with_breakpoints(b);
    let est = try_integrate(&axis, &Rule::rel(rel_tol).budget(400_000), |e: f64| {
        Ok::<f64, Error>(eta(e)? * planck_derivative(e, temperature_k))
    })?
    .require_converged()?;
    // dω = dE/ħ
    Ok(-est.value / crate::units::HBAR_EV_S)
}

/// Surface thermal viscosity from the filter integral with the full `η`, kg/s.
pub fn mu_from_filter(
    atom: &Atom,
    material: &Material,
    z_nm: f64,
    temperature_k: f64,
    rel_tol: f64,
) -> Result<f64> {
    let sk = SpectralKernel::new(z_nm, &Rule::rel(1e-11))?;
    let mut extra = vec![atom.resonance_ev];
    extra.extend(material.surface_plasmon_energy());
    filter_integral(temperature_k, &extra, rel_tol, |e| {
        eta_full(atom, material, &sk, e, Order::Dressed)
    })
}

/// Black-body viscosity from the filter integral with the free-space `η`, kg/s.
pub fn mu_vacuum_from_filter(
    atom: &Atom,
    temperature_k: f64,
    model: BlackbodyModel,
    rel_tol: f64,
) -> Result<f64> {
    let wa = atom.resonance_ev;
    let mut extra = vec![wa];
    for k in 2..=10 {
        let d = 10f64.powi(-k);
        extra.extend([wa * (1.0 - d), wa * (1.0 + d)]);
    }
    filter_integral(temperature_k, &extra, rel_tol, |e| Ok(eta_vacuum(atom, e, model)))
}

/// Maximum of `f` inside `[lo, hi]` by repeated grid refinement.
///
/// Assumes a single peak in the window; narrow peaks are still found
/// because the grid maximum always brackets the true one.
pub fn find_peak(lo: f64, hi: f64, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("empty peak window [{lo}, {hi}]")));
    }
    const N: usize = 200;
    let (mut a, mut b) = (lo, hi);
    for _ in 0..40 {
        let h = (b - a) / N as f64;
        let mut best = (a, f64::NEG_INFINITY);
        for i in 0..=N {
            let x = a + i as f64 * h;
            let y = f(x)?;
            if y > best.1 {
                best = (x, y);
            }
        }
        a = (best.0 - h).max(lo);
        b = (best.0 + h).min(hi);
        if b - a < 1e-12 * best.0.abs().max(1e-300) {
            break;
        }
    }
    Ok(0.5 * (a + b))
}

/// Log-spaced grid with `per_decade` points per decade, both ends included.
pub fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && per_decade > 0) {
        return Err(Error::InvalidParameter(format!(
            "frequency range must satisfy 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    let decades = (hi / lo).log10();
    let n = (decades * per_decade as f64).ceil().max(1.0) as usize;
    Ok((0..=n)
        .map(|i| lo * 10f64.powf(decades * i as f64 / n as f64))
        .collect())
}

/// Which curve a spectral sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralKind {
    PlanckDerivative,
    EtaFull,
    EtaNearfield,
    EtaLowfreq,
    /// Marker rows: the located peaks with the curve value there.
    PeakAtomic,
    PeakSurface,
    PeakPlanck,
}

impl SpectralKind {
    pub fn label(&self) -> &'static str {
        match self {
            SpectralKind::PlanckDerivative => "planck_derivative",
            SpectralKind::EtaFull => "eta_full",
            SpectralKind::EtaNearfield => "eta_nearfield",
            SpectralKind::EtaLowfreq => "eta_lowfreq",
            SpectralKind::PeakAtomic => "peak_atomic",
            SpectralKind::PeakSurface => "peak_surface",
            SpectralKind::PeakPlanck => "peak_planck",
        }
    }
}

/// One sample of an exported curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub omega_ev: f64,
    pub value: f64,
    pub kind: SpectralKind,
}

/// Curves normalized as plotted: `η` divided by its low-frequency form,
/// `T∂_Tϱ` divided by half its maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCurves {
    pub distance_nm: f64,
    pub temperature_k: f64,
    pub eta_normalization: String,
    pub planck_normalization: String,
    /// Peak of `η` near the atomic resonance, eV.
    pub atomic_peak_ev: f64,
    /// Peak of `η` near the surface plasmon, eV (Drude surfaces).
    pub surface_peak_ev: Option<f64>,
    pub planck_peak_ev: f64,
    pub points: Vec<SpectralPoint>,
}

/// Samples every curve on `grid` (eV).
pub fn spectral_curves(
    atom: &Atom,
    material: &Material,
    z_nm: f64,
    temperature_k: f64,
    grid: &[f64],
) -> Result<SpectralCurves> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty frequency grid".into()));
    }
    if !(temperature_k > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "the Planck derivative needs T > 0, got {temperature_k} K"
        )));
    }
    let rho = material.resistivity()?;
    let sk = SpectralKernel::new(z_nm, &Rule::rel(1e-11))?;
    let eta = |e: f64| eta_full(atom, material, &sk, e, Order::Dressed);
    let wa = atom.resonance_ev;
    let atomic_peak = find_peak(0.9 * wa, 1.1 * wa, eta)?;
    let surface_peak = match material.surface_plasmon_energy() {
        Some(sp) => Some(find_peak(0.8 * sp, 1.2 * sp, eta)?),
        None => None,
    };
    let planck_peak = planck_derivative_peak(temperature_k);
    let half_max = 0.5 * planck_derivative(planck_peak, temperature_k);
    let mut points = Vec::with_capacity(4 * grid.len());
    for &e in grid {
        let low = eta_lowfreq(atom, rho, z_nm, e);
        points.push(SpectralPoint { omega_ev: e, value: eta(e)? / low, kind: SpectralKind::EtaFull });
        points.push(SpectralPoint {
            omega_ev: e,
            value: eta_nearfield(atom, material, z_nm, e)? / low,
            kind: SpectralKind::EtaNearfield,
        });
        points.push(SpectralPoint { omega_ev: e, value: 1.0, kind: SpectralKind::EtaLowfreq });
        points.push(SpectralPoint {
            omega_ev: e,
            value: planck_derivative(e, temperature_k) / half_max,
            kind: SpectralKind::PlanckDerivative,
        });
    }
    let mut markers = vec![(atomic_peak, SpectralKind::PeakAtomic)];
    markers.extend(surface_peak.map(|e| (e, SpectralKind::PeakSurface)));
    for (e, kind) in markers {
        let value = eta(e)? / eta_lowfreq(atom, rho, z_nm, e);
        points.push(SpectralPoint { omega_ev: e, value, kind });
    }
    points.push(SpectralPoint {
        omega_ev: planck_peak,
        value: planck_derivative(planck_peak, temperature_k) / half_max,
        kind: SpectralKind::PeakPlanck,
    });
    Ok(SpectralCurves {
        distance_nm: z_nm,
        temperature_k,
        eta_normalization: "eta_lowfreq".into(),
        planck_normalization: "half_maximum".into(),
        atomic_peak_ev: atomic_peak,
        surface_peak_ev: surface_peak,
        planck_peak_ev: planck_peak,
        points,
    })
}
