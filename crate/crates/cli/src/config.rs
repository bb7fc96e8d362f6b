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


//! Run configuration: a TOML file with `[scenario]`, `[computation]`,
//! `[spectral]`, `[regime_map]` and `[output]` tables.
//!
//! ```toml
//! [scenario]
//! material = "gold"                      # or { kind = "drude", plasma_ev = 9.0, damping_ev = 0.1 }
//! distance_nm = { start = 1.0, stop = 200.0, points = 40 }
//! velocity_m_s = 12000.0                 # or "critical"
//! temperature_k = 3.0
//! ```

use crate::error::CliError;
use emvisc::asymptotics::critical_scales;
use emvisc::force::{Accuracy, Method, Route, Scenario};
use emvisc::material::Material;
use emvisc::polarizability::Atom;
use emvisc::spectra::{Order, Statistics};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub scenario: ScenarioConfig,
    #[serde(default)]
    pub computation: ComputationConfig,
    #[serde(default)]
    pub spectral: SpectralConfig,
    #[serde(default)]
    pub regime_map: RegimeMapConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

impl Default for RunConfig {
    /// The reference scenario, used when no file is given.
    fn default() -> Self {
        Self {
            scenario: ScenarioConfig {
                material: Some(MaterialConfig::Preset(Preset::Gold)),
                ..ScenarioConfig::default()
            },
            computation: ComputationConfig::default(),
            spectral: SpectralConfig::default(),
            regime_map: RegimeMapConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Drude metal, ωp = 9 eV, Γ = 0.1 eV.
    Gold,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MaterialConfig {
    Preset(Preset),
    Model(Material),
}

impl MaterialConfig {
    pub fn build(&self) -> Material {
        match self {
            MaterialConfig::Preset(Preset::Gold) => Material::gold_like(),
            MaterialConfig::Model(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

/// A single value or an evenly spaced range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AxisSpec {
    Value(f64),
    Range {
        start: f64,
        stop: f64,
        points: usize,
        #[serde(default)]
        spacing: Spacing,
    },
}

impl AxisSpec {
    pub fn is_range(&self) -> bool {
        matches!(self, AxisSpec::Range { .. })
    }

    pub fn values(&self, field: &str) -> Result<Vec<f64>, CliError> {
        match *self {
            AxisSpec::Value(v) => Ok(vec![v]),
            AxisSpec::Range {
                start,
                stop,
                points,
                spacing,
            } => {
                if points == 0 {
                    return Err(CliError::invalid(field, "range needs at least one point"));
                }
                if !(start.is_finite() && stop.is_finite()) {
                    return Err(CliError::invalid(field, "range bounds must be finite"));
                }
                if spacing == Spacing::Log && !(start > 0.0 && stop > 0.0) {
                    return Err(CliError::invalid(field, "log spacing needs positive bounds"));
                }
                if points == 1 {
                    return Ok(vec![start]);
                }
                let n = (points - 1) as f64;
                Ok((0..points)
                    .map(|i| {
                        let s = i as f64 / n;
                        match spacing {
                            Spacing::Linear => start + s * (stop - start),
                            Spacing::Log => start * (stop / start).powf(s),
                        }
                    })
                    .collect())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VelocityKeyword {
    /// `v_c` at each scenario's distance and temperature.
    Critical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VelocitySpec {
    Axis(AxisSpec),
    Keyword(VelocityKeyword),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<MaterialConfig>,
    #[serde(default = "Atom::reference")]
    pub atom: Atom,
    #[serde(default = "default_distance")]
    pub distance_nm: AxisSpec,
    #[serde(default = "default_velocity")]
    pub velocity_m_s: VelocitySpec,
    #[serde(default = "default_temperature")]
    pub temperature_k: AxisSpec,
}

fn default_distance() -> AxisSpec {
    AxisSpec::Value(5.0)
}
fn default_velocity() -> VelocitySpec {
    VelocitySpec::Axis(AxisSpec::Value(1.2e4))
}
fn default_temperature() -> AxisSpec {
    AxisSpec::Value(3.0)
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            material: None,
            atom: Atom::reference(),
            distance_nm: default_distance(),
            velocity_m_s: default_velocity(),
            temperature_k: default_temperature(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputationConfig {
    #[serde(default)]
    pub route: Route,
    #[serde(default)]
    pub mode: Statistics,
    #[serde(default)]
    pub order: Order,
    #[serde(default = "default_tol")]
    pub rel_tol: f64,
    /// Sweep workers; 0 uses every hardware thread.
    #[serde(default)]
    pub workers: usize,
}

fn default_tol() -> f64 {
    Accuracy::default().rel_tol
}

impl Default for ComputationConfig {
    fn default() -> Self {
        Self {
            route: Route::default(),
            mode: Statistics::default(),
            order: Order::default(),
            rel_tol: default_tol(),
            workers: 0,
        }
    }
}

impl ComputationConfig {
    pub fn method(&self) -> Method {
        Method::new(self.route, self.mode, self.order)
    }

    pub fn accuracy(&self) -> Accuracy {
        Accuracy::default().with_rel_tol(self.rel_tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralConfig {
    #[serde(default = "default_omega_min")]
    pub omega_min_ev: f64,
    #[serde(default = "default_omega_max")]
    pub omega_max_ev: f64,
    #[serde(default = "default_per_decade")]
    pub points_per_decade: usize,
}

fn default_omega_min() -> f64 {
    1e-3
}
fn default_omega_max() -> f64 {
    10.0
}
fn default_per_decade() -> usize {
    64
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            omega_min_ev: default_omega_min(),
            omega_max_ev: default_omega_max(),
            points_per_decade: default_per_decade(),
        }
    }
}

/// Where `velocity_m_s = "critical"` is evaluated for a regime map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeMapConfig {
    #[serde(default = "default_ref_distance")]
    pub reference_distance_nm: f64,
    #[serde(default = "default_ref_temperature")]
    pub reference_temperature_k: f64,
}

fn default_ref_distance() -> f64 {
    5.0
}
fn default_ref_temperature() -> f64 {
    3.0
}

impl Default for RegimeMapConfig {
    fn default() -> Self {
        Self {
            reference_distance_nm: default_ref_distance(),
            reference_temperature_k: default_ref_temperature(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    /// Significant digits of CSV numbers.
    #[serde(default = "default_precision")]
    pub precision: usize,
    /// Include per-row wall time in sweep output.
    #[serde(default = "default_timing")]
    pub timing: bool,
}

fn default_precision() -> usize {
    10
}
fn default_timing() -> bool {
    true
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            path: None,
            format: Format::Csv,
            precision: default_precision(),
            timing: default_timing(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn material(&self) -> Result<Material, CliError> {
        let m = self
            .scenario
            .material
            .as_ref()
            .ok_or_else(|| CliError::invalid("scenario.material", "missing; surface commands need a material"))?
            .build();
        m.validate()
            .map_err(|e| CliError::invalid("scenario.material", e.to_string()))?;
        Ok(m)
    }

    pub fn atom(&self) -> Result<Atom, CliError> {
        self.scenario
            .atom
            .validate()
            .map_err(|e| CliError::invalid("scenario.atom", e.to_string()))?;
        Ok(self.scenario.atom)
    }

    pub fn validate_common(&self) -> Result<(), CliError> {
        let c = &self.computation;
        if !(c.rel_tol > 0.0 && c.rel_tol < 1.0) {
            return Err(CliError::invalid("computation.rel_tol", format!("must lie in (0, 1), got {}", c.rel_tol)));
        }
        if self.output.precision == 0 || self.output.precision > 17 {
            return Err(CliError::invalid(
                "output.precision",
                format!("must lie in 1..=17, got {}", self.output.precision),
            ));
        }
        Ok(())
    }

    /// Number of range-valued axes among distance, velocity and temperature.
    pub fn swept_axes(&self) -> usize {
        let s = &self.scenario;
        let v = matches!(s.velocity_m_s, VelocitySpec::Axis(a) if a.is_range());
        [s.distance_nm.is_range(), v, s.temperature_k.is_range()]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    /// Every scenario of the run; distance varies slowest, velocity fastest.
    pub fn scenarios(&self) -> Result<Vec<Scenario>, CliError> {
        let atom = self.atom()?;
        let material = self.material()?;
        let rho = material.resistivity().ok();
        let zs = self.scenario.distance_nm.values("scenario.distance_nm")?;
        let ts = self.scenario.temperature_k.values("scenario.temperature_k")?;
        let vs = match self.scenario.velocity_m_s {
            VelocitySpec::Axis(a) => Some(a.values("scenario.velocity_m_s")?),
            VelocitySpec::Keyword(VelocityKeyword::Critical) => None,
        };
        let mut out = Vec::new();
        for &z in &zs {
            for &t in &ts {
                let v_points = match &vs {
                    Some(v) => v.clone(),
                    None => {
                        let rho = rho.ok_or_else(|| {
                            CliError::invalid("scenario.velocity_m_s", "\"critical\" needs an Ohmic material")
                        })?;
                        vec![critical_scales(z, 1.0, t, rho).v_c_m_s]
                    }
                };
                for v in v_points {
                    let scn = Scenario {
                        atom,
                        material: material.clone(),
                        distance_nm: z,
                        velocity_m_s: v,
                        temperature_k: t,
                    };
                    scn.validate().map_err(|e| CliError::invalid("scenario", e.to_string()))?;
                    out.push(scn);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips() {
        let c = RunConfig::default();
        let back = RunConfig::from_toml(&c.to_toml().unwrap()).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn parses_ranges_and_keywords() {
        let c = RunConfig::from_toml(
            r#"
            [scenario]
            material = { kind = "drude", plasma_ev = 9.0, damping_ev = 0.1 }
            distance_nm = { start = 1.0, stop = 100.0, points = 3 }
            velocity_m_s = "critical"
            temperature_k = { start = 1.0, stop = 3.0, points = 3, spacing = "linear" }
            [computation]
            route = "shifted"
            mode = "lte"
            order = "leading"
            "#,
        )
        .unwrap();
        assert_eq!(c.swept_axes(), 2);
        let zs = c.scenario.distance_nm.values("z").unwrap();
        assert!((zs[1] - 10.0).abs() < 1e-12);
        let scn = c.scenarios().unwrap();
        assert_eq!(scn.len(), 9);
        assert_eq!(c.computation.route, Route::Shifted);
        assert_eq!(c.computation.mode, Statistics::Lte);
    }

    #[test]
    fn missing_material_is_reported_with_its_path() {
        let c = RunConfig::from_toml("[scenario]\ndistance_nm = 5.0\n").unwrap();
        let e = c.material().unwrap_err();
        assert!(e.to_string().contains("scenario.material"), "{e}");
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(RunConfig::from_toml("[scenario]\ndistanse_nm = 5.0\n").is_err());
    }
}
