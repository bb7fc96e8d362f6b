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

//! Physical constants and the internal unit system.
//!
//! Internally energies (and frequencies, as `ħω`) are in eV, lengths in nm,
//! wave numbers in 1/nm. Polarizabilities are stored as the volume
//! `a = α/(4πε₀)` in nm³. SI only appears at the boundary.

/// Reduced Planck constant in eV·s.
pub const HBAR_EV_S: f64 = 6.582119569e-16;
/// Reduced Planck constant in J·s.
pub const HBAR_J_S: f64 = 1.054571817e-34;
/// Elementary charge, J per eV.
pub const EV_J: f64 = 1.602176634e-19;
/// Boltzmann constant in eV/K.
pub const KB_EV_K: f64 = 8.617333262e-5;
/// Speed of light in m/s.
pub const C_M_S: f64 = 299_792_458.0;
/// Vacuum permittivity in F/m.
pub const EPS0_F_M: f64 = 8.8541878128e-12;
/// `ħc` in eV·nm.
pub const HBAR_C_EV_NM: f64 = HBAR_EV_S * C_M_S * 1e9;
/// Metres per nanometre.
pub const NM: f64 = 1e-9;
/// Newtons per eV/nm.
pub const EV_PER_NM_N: f64 = EV_J / NM;

/// Thermal energy `k_B T` in eV.
pub fn thermal_energy(temperature_k: f64) -> f64 {
    KB_EV_K * temperature_k
}

/// Reduced thermal wavelength `ħc/(k_B T)` in nm (infinite at T = 0).
pub fn thermal_wavelength(temperature_k: f64) -> f64 {
    HBAR_C_EV_NM / thermal_energy(temperature_k)
}

/// `ħv` in eV·nm for a velocity in m/s.
pub fn hbar_v(velocity_m_s: f64) -> f64 {
    HBAR_EV_S * velocity_m_s * 1e9
}

/// Angular frequency in rad/s for an energy `ħω` in eV.
pub fn energy_to_angular(energy_ev: f64) -> f64 {
    energy_ev / HBAR_EV_S
}

/// Energy `ħω` in eV for an angular frequency in rad/s.
pub fn angular_to_energy(omega_rad_s: f64) -> f64 {
    omega_rad_s * HBAR_EV_S
}

/// SI polarizability `α` (C·m²/V) from a volume in nm³.
pub fn volume_to_si_polarizability(volume_nm3: f64) -> f64 {
    4.0 * std::f64::consts::PI * EPS0_F_M * volume_nm3 * NM.powi(3)
}

/// Volume in nm³ from an SI polarizability.
pub fn si_polarizability_to_volume(alpha_si: f64) -> f64 {
    alpha_si / (4.0 * std::f64::consts::PI * EPS0_F_M * NM.powi(3))
}

/// Resistivity length `4πε₀cρ` in nm for `ρ` in Ω·m.
pub fn resistivity_length(rho_ohm_m: f64) -> f64 {
    4.0 * std::f64::consts::PI * EPS0_F_M * C_M_S * rho_ohm_m / NM
}
