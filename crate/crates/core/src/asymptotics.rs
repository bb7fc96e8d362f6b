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


//! Closed-form low-velocity viscosities, crossover scales and the regime map.
//!
//! Inputs use the library units (nm, m/s, K, nm³, Ω·m); viscosities are
//! returned in kg/s and negative for a drag.

use crate::units::{
    resistivity_length, thermal_energy, thermal_wavelength, volume_to_si_polarizability, C_M_S,
    EPS0_F_M, HBAR_EV_S, HBAR_J_S, KB_EV_K, NM,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Quantum-friction viscosity `-(18/π³) ħ α₀² ρ² v² / (2z)¹⁰` (T = 0, Ohmic surface).
pub fn mu_quantum_friction(a0_nm3: f64, rho_ohm_m: f64, z_nm: f64, v_m_s: f64) -> f64 {
    let alpha = volume_to_si_polarizability(a0_nm3);
    let d = 2.0 * z_nm * NM;
    -18.0 / PI.powi(3) * HBAR_J_S * (alpha * rho_ohm_m * v_m_s).powi(2) / d.powi(10)
}

/// Surface-thermal viscosity `-(3/π) ħ α₀² ρ² (k_B T/ħ)² / (2z)⁸` (v → 0).
pub fn mu_surface_thermal(a0_nm3: f64, rho_ohm_m: f64, z_nm: f64, temperature_k: f64) -> f64 {
    let alpha = volume_to_si_polarizability(a0_nm3);
    let d = 2.0 * z_nm * NM;
    let w = thermal_energy(temperature_k) / HBAR_EV_S;
    -3.0 / PI * HBAR_J_S * (alpha * rho_ohm_m * w).powi(2) / d.powi(8)
}

/// `(diagonal, spin)` parts of the quantum-friction viscosity: `(7/2, -5/2) μ_QF`.
pub fn quantum_friction_split(mu: f64) -> (f64, f64) {
    (3.5 * mu, -2.5 * mu)
}

/// `(diagonal, spin)` parts of the surface-thermal viscosity: `(2, -1) μ_T`.
pub fn surface_thermal_split(mu: f64) -> (f64, f64) {
    (2.0 * mu, -mu)
}

/// Black-body viscosity for `k_B T ≪ ħω_a`:
/// `-(32π⁵/135) ħ (α₀/ε₀)² (k_B T/ħc)⁸`.
pub fn mu_blackbody_low_temperature(a0_nm3: f64, temperature_k: f64) -> f64 {
    let alpha = volume_to_si_polarizability(a0_nm3);
    let k = thermal_energy(temperature_k) / (HBAR_EV_S * C_M_S);
    -32.0 * PI.powi(5) / 135.0 * HBAR_J_S * (alpha / EPS0_F_M).powi(2) * k.powi(8)
}

/// Resonant black-body viscosity for a sharp line,
/// `-a₀ (ħω_a⁵/3c⁵) βħω_a / sinh²(βħω_a/2)`.
pub fn mu_blackbody_resonant(a0_nm3: f64, resonance_ev: f64, temperature_k: f64) -> f64 {
    if temperature_k <= 0.0 {
        return 0.0;
    }
    let a = a0_nm3 * NM.powi(3);
    let w = resonance_ev / HBAR_EV_S;
    let x = resonance_ev / thermal_energy(temperature_k);
    -a * HBAR_J_S * w.powi(5) / (3.0 * C_M_S.powi(5)) * x / (0.5 * x).sinh().powi(2)
}

/// Crossover scales for a given atom distance, velocity and temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalScales {
    /// Distance where surface-thermal and quantum friction are equal, nm.
    pub lambda_c_nm: f64,
    /// Distance where black-body and surface-thermal friction are equal, nm.
    pub ell_c_nm: f64,
    /// Velocity where surface-thermal and quantum friction are equal, m/s.
    pub v_c_m_s: f64,
    /// Temperature where surface-thermal and quantum friction are equal, K.
    pub t_c_k: f64,
    /// Temperature where black-body and surface-thermal friction are equal, K.
    pub t_c_vacuum_k: f64,
    /// Order-of-magnitude velocity `k_B T z/ħ`, m/s.
    pub v_c_rough_m_s: f64,
    /// Order-of-magnitude distance `ħv/k_B T`, nm.
    pub lambda_c_rough_nm: f64,
    /// Order-of-magnitude temperature `ħv/(k_B z)`, K.
    pub t_c_rough_k: f64,
}

/// Evaluates every [`CriticalScales`] entry.
pub fn critical_scales(z_nm: f64, v_m_s: f64, temperature_k: f64, rho_ohm_m: f64) -> CriticalScales {
    let hv = HBAR_EV_S * v_m_s * 1e9; // eV nm
    let kt = thermal_energy(temperature_k);
    let lam_rho = resistivity_length(rho_ohm_m);
    let lam_th = thermal_wavelength(temperature_k);
    let lambda_c = (1.5f64).sqrt() / PI * hv / kt;
    let ell_c = 2f64.sqrt() / 4.0
        * ((2.5f64).sqrt() * lam_rho / lam_th).powf(0.25)
        * (C_M_S / v_m_s)
        * lambda_c;
    let v_c = (2.0 / 3.0f64).sqrt() * PI * kt * z_nm / (HBAR_EV_S * 1e9);
    let t_c = (1.5f64).sqrt() / PI * hv / (KB_EV_K * z_nm);
    let t_c_vac = 2f64.sqrt() / 8.0
        * (C_M_S / v_m_s)
        * ((30f64).sqrt() / PI * lam_rho / z_nm).powf(1.0 / 3.0)
        * t_c;
    CriticalScales {
        lambda_c_nm: lambda_c,
        ell_c_nm: ell_c,
        v_c_m_s: v_c,
        t_c_k: t_c,
        t_c_vacuum_k: t_c_vac,
        v_c_rough_m_s: kt * z_nm / (HBAR_EV_S * 1e9),
        lambda_c_rough_nm: hv / kt,
        t_c_rough_k: hv / (KB_EV_K * z_nm),
    }
}

/// `z·T` (nm·K) on the boundary between quantum and surface-thermal friction.
pub fn boundary_quantum_thermal(v_m_s: f64) -> f64 {
    (1.5f64).sqrt() * HBAR_EV_S * v_m_s * 1e9 / (KB_EV_K * PI)
}

/// `z·T` (nm·K) on the boundary between surface-thermal and black-body friction.
pub fn boundary_thermal_blackbody(temperature_k: f64, rho_ohm_m: f64) -> f64 {
    let lam_rho = resistivity_length(rho_ohm_m);
    let lam_th = thermal_wavelength(temperature_k);
    (4.5 * 10f64.sqrt() * lam_rho / lam_th).powf(0.25) * HBAR_EV_S * C_M_S * 1e9
        / (4.0 * PI * KB_EV_K)
}

/// Dominant friction mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    QuantumFriction,
    SurfaceThermal,
    BlackBody,
    /// Velocity or temperature reaches the atomic resonance; asymptotics do not apply.
    Resonant,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::QuantumFriction => "quantum_friction",
            Regime::SurfaceThermal => "surface_thermal",
            Regime::BlackBody => "black_body",
            Regime::Resonant => "resonant",
        }
    }
}

/// True when `v > ω_a z/2` or `k_B T > ħω_a/2`.
pub fn is_resonant(z_nm: f64, v_m_s: f64, temperature_k: f64, resonance_ev: f64) -> bool {
    let doppler = HBAR_EV_S * v_m_s * 1e9 / z_nm;
    doppler > 0.5 * resonance_ev || thermal_energy(temperature_k) > 0.5 * resonance_ev
}

/// The three closed-form viscosities `(μ_QF, μ_T, μ_T^vac)`.
pub fn closed_forms(
    a0_nm3: f64,
    rho_ohm_m: f64,
    z_nm: f64,
    v_m_s: f64,
    temperature_k: f64,
) -> (f64, f64, f64) {
    (
        mu_quantum_friction(a0_nm3, rho_ohm_m, z_nm, v_m_s),
        mu_surface_thermal(a0_nm3, rho_ohm_m, z_nm, temperature_k),
        mu_blackbody_low_temperature(a0_nm3, temperature_k),
    )
}

/// Regime with the largest closed-form viscosity, or [`Regime::Resonant`].
pub fn classify_regime(
    a0_nm3: f64,
    resonance_ev: f64,
    rho_ohm_m: f64,
    z_nm: f64,
    v_m_s: f64,
    temperature_k: f64,
) -> Regime {
    if is_resonant(z_nm, v_m_s, temperature_k, resonance_ev) {
        return Regime::Resonant;
    }
    let (qf, th, bb) = closed_forms(a0_nm3, rho_ohm_m, z_nm, v_m_s, temperature_k);
    let (qf, th, bb) = (qf.abs(), th.abs(), bb.abs());
    if qf >= th && qf >= bb {
        Regime::QuantumFriction
    } else if th >= bb {
        Regime::SurfaceThermal
    } else {
        Regime::BlackBody
    }
}

/// One cell of a regime map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeCell {
    pub z_nm: f64,
    pub temperature_k: f64,
    pub regime: Regime,
    pub mu_quantum_friction: f64,
    pub mu_surface_thermal: f64,
    pub mu_blackbody: f64,
}

/// Regime map over a distance × temperature grid (temperature outermost).
pub fn regime_map(
    a0_nm3: f64,
    resonance_ev: f64,
    rho_ohm_m: f64,
    v_m_s: f64,
    distances_nm: &[f64],
    temperatures_k: &[f64],
) -> Vec<RegimeCell> {
    let mut out = Vec::with_capacity(distances_nm.len() * temperatures_k.len());
    for &t in temperatures_k {
        for &z in distances_nm {
            let (qf, th, bb) = closed_forms(a0_nm3, rho_ohm_m, z, v_m_s, t);
            out.push(RegimeCell {
                z_nm: z,
                temperature_k: t,
                regime: classify_regime(a0_nm3, resonance_ev, rho_ohm_m, z, v_m_s, t),
                mu_quantum_friction: qf,
                mu_surface_thermal: th,
                mu_blackbody: bb,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const A0: f64 = 0.04728;
    const RHO: f64 = 9.1777e-8;

    #[test]
    fn crossover_distance_balances_closed_forms() {
        for (t, v) in [(3.0, 1.2e4), (30.0, 500.0), (300.0, 3.0e5)] {
            let s = critical_scales(5.0, v, t, RHO);
            let ratio = mu_surface_thermal(A0, RHO, s.lambda_c_nm, t)
                / mu_quantum_friction(A0, RHO, s.lambda_c_nm, v);
            assert!((ratio - 1.0).abs() < 1e-12, "{ratio}");
        }
    }

    #[test]
    fn crossover_velocity_and_temperature() {
        let (z, t, v) = (7.0, 4.0, 2.0e3);
        let s = critical_scales(z, v, t, RHO);
        let r = mu_surface_thermal(A0, RHO, z, t) / mu_quantum_friction(A0, RHO, z, s.v_c_m_s);
        assert!((r - 1.0).abs() < 1e-12);
        let r = mu_surface_thermal(A0, RHO, z, s.t_c_k) / mu_quantum_friction(A0, RHO, z, v);
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn blackbody_crossovers() {
        let (z, t, v) = (50.0, 3.0, 1.2e4);
        let s = critical_scales(z, v, t, RHO);
        let r = mu_blackbody_low_temperature(A0, t) / mu_surface_thermal(A0, RHO, s.ell_c_nm, t);
        assert!((r - 1.0).abs() < 1e-10, "{r}");
        let r = mu_blackbody_low_temperature(A0, s.t_c_vacuum_k)
            / mu_surface_thermal(A0, RHO, z, s.t_c_vacuum_k);
        assert!((r - 1.0).abs() < 1e-10, "{r}");
    }

    #[test]
    fn rough_critical_velocity() {
        let s = critical_scales(10.0, 1.0, 3.0, RHO);
        assert!(s.v_c_rough_m_s > 3.9e3 && s.v_c_rough_m_s < 4.1e3);
    }

    #[test]
    fn boundaries_are_crossovers() {
        let v = 1.2e4;
        for t in [1.0, 3.0, 40.0] {
            let z = boundary_quantum_thermal(v) / t;
            let r = mu_surface_thermal(A0, RHO, z, t) / mu_quantum_friction(A0, RHO, z, v);
            assert!((r - 1.0).abs() < 1e-10);
            let z = boundary_thermal_blackbody(t, RHO) / t;
            let r = mu_blackbody_low_temperature(A0, t) / mu_surface_thermal(A0, RHO, z, t);
            assert!((r - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn splits_add_up() {
        let (a, b) = quantum_friction_split(-2.0);
        assert_eq!(a + b, -2.0);
        assert!((b / a + 5.0 / 7.0).abs() < 1e-15);
        let (a, b) = surface_thermal_split(-3.0);
        assert_eq!(a + b, -3.0);
        assert_eq!(b / a, -0.5);
    }

    #[test]
    fn classification_follows_distance() {
        let (v, t) = (1.2e4, 3.0);
        assert_eq!(classify_regime(A0, 1.3, RHO, 2.0, v, t), Regime::QuantumFriction);
        assert_eq!(classify_regime(A0, 1.3, RHO, 200.0, v, t), Regime::SurfaceThermal);
        assert_eq!(classify_regime(A0, 1.3, RHO, 5.0e4, v, t), Regime::BlackBody);
        assert_eq!(classify_regime(A0, 1.3, RHO, 5.0, 1.0e7, t), Regime::Resonant);
    }
}
