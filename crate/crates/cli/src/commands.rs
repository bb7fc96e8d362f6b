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


//! The five subcommands.

use crate::config::{Format, RunConfig, VelocityKeyword, VelocitySpec};
use crate::error::CliError;
use crate::output::{sig, write_csv, write_json, Row};
use emvisc::asymptotics::{
    boundary_quantum_thermal, boundary_thermal_blackbody, closed_forms, critical_scales, regime_map,
};
use emvisc::force::{viscosity, Scenario, ViscosityBreakdown};
use emvisc::spectral::{log_grid, spectral_curves};
use emvisc::sweep::{available_workers, sweep};
use emvisc::validate::{run_check, ValidationOptions, ValidationReport, CRITERIA};
use serde::Serialize;

fn scenario_context(s: &Scenario) -> String {
    format!(
        "z = {} nm, v = {} m/s, T = {} K",
        s.distance_nm, s.velocity_m_s, s.temperature_k
    )
}

fn breakdown_row(b: &ViscosityBreakdown, p: usize, timing: bool) -> Row {
    let mut row: Row = vec![
        ("distance_nm", sig(b.distance_nm, p)),
        ("velocity_m_s", sig(b.velocity_m_s, p)),
        ("temperature_k", sig(b.temperature_k, p)),
        ("mu", sig(b.mu, p)),
        ("mu_translational", sig(b.mu_translational, p)),
        ("mu_rotational", sig(b.mu_rotational, p)),
        ("mu_over_quantum_friction", sig(b.mu_over_quantum_friction, p)),
        ("mu_over_surface_thermal", sig(b.mu_over_surface_thermal, p)),
        ("mu_quantum_friction", sig(b.mu_quantum_friction, p)),
        ("mu_surface_thermal", sig(b.mu_surface_thermal, p)),
        ("mu_blackbody", sig(b.mu_blackbody, p)),
        ("regime", b.regime.label().to_string()),
        ("error_kg_s", sig(b.error_kg_s, p)),
        ("converged", b.converged.to_string()),
    ];
    if timing {
        row.push(("elapsed_s", sig(b.elapsed_s, 4)));
    }
    row
}

fn failed_row(s: &Scenario, p: usize, timing: bool, message: &str) -> Row {
    let blank = [
        "mu",
        "mu_translational",
        "mu_rotational",
        "mu_over_quantum_friction",
        "mu_over_surface_thermal",
        "mu_quantum_friction",
        "mu_surface_thermal",
        "mu_blackbody",
        "regime",
        "error_kg_s",
    ];
    let mut row: Row = vec![
        ("distance_nm", sig(s.distance_nm, p)),
        ("velocity_m_s", sig(s.velocity_m_s, p)),
        ("temperature_k", sig(s.temperature_k, p)),
    ];
    row.extend(blank.iter().map(|&c| (c, String::new())));
    row.push(("converged", "false".into()));
    if timing {
        row.push(("elapsed_s", String::new()));
    }
    row.push(("status", "failed".into()));
    row.push(("message", message.to_string()));
    row
}

pub fn cmd_viscosity(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate_common()?;
    if cfg.swept_axes() > 0 {
        return Err(CliError::invalid("scenario", "ranges are not allowed here; use `emvisc sweep`"));
    }
    let scn = cfg
        .scenarios()?
        .pop()
        .ok_or_else(|| CliError::invalid("scenario", "no scenario"))?;
    if scn.velocity_m_s == 0.0 {
        return Err(CliError::invalid(
            "scenario.velocity_m_s",
            "v = 0 has no viscosity F/v; use `emvisc regime-map` for the closed-form v -> 0 viscosities",
        ));
    }
    let b = viscosity(&scn, cfg.computation.method(), &cfg.computation.accuracy())
        .map_err(|e| CliError::computation(scenario_context(&scn), e))?;
    let out = cfg.output.path.as_deref();
    match cfg.output.format {
        Format::Json => write_json(out, &b),
        Format::Csv => write_csv(out, &[], &[breakdown_row(&b, cfg.output.precision, cfg.output.timing)]),
    }
}

#[derive(Serialize)]
struct SweepRecord<'a> {
    distance_nm: f64,
    velocity_m_s: f64,
    temperature_k: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a ViscosityBreakdown>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Runs the sweep; returns the number of failed rows.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<usize, CliError> {
    cfg.validate_common()?;
    let axes = cfg.swept_axes();
    if !(1..=2).contains(&axes) {
        return Err(CliError::invalid(
            "scenario",
            format!("a sweep needs one or two range axes, got {axes}"),
        ));
    }
    let items = cfg.scenarios()?;
    let method = cfg.computation.method();
    let acc = cfg.computation.accuracy();
    let workers = match cfg.computation.workers {
        0 => available_workers(),
        n => n,
    };
    let results = sweep(&items, |s: &Scenario| viscosity(s, method, &acc), workers);
    let failures = results.iter().filter(|r| r.result.is_err()).count();
    let out = cfg.output.path.as_deref();
    let (p, timing) = (cfg.output.precision, cfg.output.timing);
    match cfg.output.format {
        Format::Json => {
            let records: Vec<SweepRecord> = items
                .iter()
                .zip(&results)
                .map(|(s, r)| SweepRecord {
                    distance_nm: s.distance_nm,
                    velocity_m_s: s.velocity_m_s,
                    temperature_k: s.temperature_k,
                    result: r.result.as_ref().ok(),
                    error: r.result.as_ref().err().map(|e| e.to_string()),
                })
                .collect();
            write_json(out, &records)?;
        }
        Format::Csv => {
            let rows: Vec<Row> = items
                .iter()
                .zip(&results)
                .map(|(s, r)| match &r.result {
                    Ok(b) => {
                        let mut row = breakdown_row(b, p, timing);
                        row.push(("status", "ok".into()));
                        row.push(("message", String::new()));
                        row
                    }
                    Err(e) => failed_row(s, p, timing, &e.to_string()),
                })
                .collect();
            write_csv(out, &[], &rows)?;
        }
    }
    Ok(failures)
}

#[derive(Serialize)]
struct BoundaryPoint {
    temperature_k: f64,
    z_nm: f64,
}

#[derive(Serialize)]
struct RegimeMapReport<'a> {
    velocity_m_s: f64,
    cells: &'a [emvisc::asymptotics::RegimeCell],
    boundary_quantum_thermal: Vec<BoundaryPoint>,
    boundary_thermal_blackbody: Vec<BoundaryPoint>,
}

pub fn cmd_regime_map(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate_common()?;
    let atom = cfg.atom()?;
    let material = cfg.material()?;
    let rho = material
        .resistivity()
        .map_err(|e| CliError::invalid("scenario.material", e.to_string()))?;
    let v = match cfg.scenario.velocity_m_s {
        VelocitySpec::Axis(a) if a.is_range() => {
            return Err(CliError::invalid("scenario.velocity_m_s", "the regime map takes a single velocity"))
        }
        VelocitySpec::Axis(a) => a.values("scenario.velocity_m_s")?[0],
        VelocitySpec::Keyword(VelocityKeyword::Critical) => {
            let r = &cfg.regime_map;
            critical_scales(r.reference_distance_nm, 1.0, r.reference_temperature_k, rho).v_c_m_s
        }
    };
    let zs = cfg.scenario.distance_nm.values("scenario.distance_nm")?;
    let ts = cfg.scenario.temperature_k.values("scenario.temperature_k")?;
    if zs.iter().any(|&z| !(z > 0.0)) {
        return Err(CliError::invalid("scenario.distance_nm", "distances must be positive"));
    }
    if ts.iter().any(|&t| !(t > 0.0)) {
        return Err(CliError::invalid("scenario.temperature_k", "temperatures must be positive"));
    }
    let a0 = atom.static_volume_nm3;
    let cells = regime_map(a0, atom.resonance_ev, rho, v, &zs, &ts);
    let qt: Vec<BoundaryPoint> = ts
        .iter()
        .map(|&t| BoundaryPoint { temperature_k: t, z_nm: boundary_quantum_thermal(v) / t })
        .collect();
    let tb: Vec<BoundaryPoint> = ts
        .iter()
        .map(|&t| BoundaryPoint { temperature_k: t, z_nm: boundary_thermal_blackbody(t, rho) / t })
        .collect();
    let out = cfg.output.path.as_deref();
    let p = cfg.output.precision;
    match cfg.output.format {
        Format::Json => write_json(
            out,
            &RegimeMapReport {
                velocity_m_s: v,
                cells: &cells,
                boundary_quantum_thermal: qt,
                boundary_thermal_blackbody: tb,
            },
        ),
        Format::Csv => {
            let point = |series: &str, z: f64, t: f64, regime: &str| -> Row {
                let (qf, th, bb) = closed_forms(a0, rho, z, v, t);
                vec![
                    ("series", series.to_string()),
                    ("z_nm", sig(z, p)),
                    ("temperature_k", sig(t, p)),
                    ("regime", regime.to_string()),
                    ("mu_quantum_friction", sig(qf, p)),
                    ("mu_surface_thermal", sig(th, p)),
                    ("mu_blackbody", sig(bb, p)),
                ]
            };
            let mut rows: Vec<Row> = cells
                .iter()
                .map(|c| point("cell", c.z_nm, c.temperature_k, c.regime.label()))
                .collect();
            rows.extend(qt.iter().map(|b| point("boundary_quantum_thermal", b.z_nm, b.temperature_k, "")));
            rows.extend(tb.iter().map(|b| point("boundary_thermal_blackbody", b.z_nm, b.temperature_k, "")));
            write_csv(out, &[("velocity_m_s".into(), sig(v, p))], &rows)
        }
    }
}

pub fn cmd_spectral_density(cfg: &RunConfig) -> Result<(), CliError> {
    cfg.validate_common()?;
    if cfg.swept_axes() > 0 {
        return Err(CliError::invalid("scenario", "spectral densities take a single distance and temperature"));
    }
    let atom = cfg.atom()?;
    let material = cfg.material()?;
    let sp = &cfg.spectral;
    if !(sp.omega_min_ev > 0.0 && sp.omega_max_ev > sp.omega_min_ev) {
        return Err(CliError::invalid(
            "spectral",
            format!(
                "empty frequency range [{}, {}] eV; need 0 < omega_min_ev < omega_max_ev",
                sp.omega_min_ev, sp.omega_max_ev
            ),
        ));
    }
    if sp.points_per_decade == 0 {
        return Err(CliError::invalid("spectral.points_per_decade", "must be positive"));
    }
    let z = cfg.scenario.distance_nm.values("scenario.distance_nm")?[0];
    let t = cfg.scenario.temperature_k.values("scenario.temperature_k")?[0];
    let grid = log_grid(sp.omega_min_ev, sp.omega_max_ev, sp.points_per_decade)
        .map_err(|e| CliError::computation("spectral", e))?;
    let curves = spectral_curves(&atom, &material, z, t, &grid)
        .map_err(|e| CliError::computation(format!("spectral density at z = {z} nm, T = {t} K"), e))?;
    let out = cfg.output.path.as_deref();
    let p = cfg.output.precision;
    match cfg.output.format {
        Format::Json => write_json(out, &curves),
        Format::Csv => {
            let mut meta = vec![
                ("distance_nm".to_string(), sig(z, p)),
                ("temperature_k".to_string(), sig(t, p)),
                ("eta_normalization".to_string(), curves.eta_normalization.clone()),
                ("planck_normalization".to_string(), curves.planck_normalization.clone()),
                ("atomic_peak_ev".to_string(), sig(curves.atomic_peak_ev, p)),
            ];
            if let Some(e) = curves.surface_peak_ev {
                meta.push(("surface_peak_ev".to_string(), sig(e, p)));
            }
            meta.push(("planck_peak_ev".to_string(), sig(curves.planck_peak_ev, p)));
            let rows: Vec<Row> = curves
                .points
                .iter()
                .map(|pt| {
                    vec![
                        ("omega_eV", sig(pt.omega_ev, p)),
                        ("value", sig(pt.value, p)),
                        ("kind", pt.kind.label().to_string()),
                    ]
                })
                .collect();
            write_csv(out, &meta, &rows)
        }
    }
}

/// Runs the acceptance checks (all, or `only`), printing one line each.
pub fn cmd_validate(cfg: &RunConfig, only: &[u8], perturb_kernel: bool, workers_given: bool) -> Result<ValidationReport, CliError> {
    cfg.validate_common()?;
    let mut opts = ValidationOptions {
        rel_tol: cfg.computation.rel_tol,
        ..ValidationOptions::default()
    };
    if workers_given && cfg.computation.workers > 0 {
        opts.workers = cfg.computation.workers;
    }
    if perturb_kernel {
        opts.zx_sign = -1.0;
    }
    let ids: Vec<u8> = if only.is_empty() {
        CRITERIA.iter().map(|c| c.0).collect()
    } else {
        for &id in only {
            if !CRITERIA.iter().any(|c| c.0 == id) {
                return Err(CliError::invalid("--check", format!("no criterion {id} (1-10)")));
            }
        }
        only.to_vec()
    };
    let json_to_stdout = cfg.output.format == Format::Json && cfg.output.path.is_none();
    let mut checks = Vec::new();
    for id in ids {
        let c = run_check(id, &opts);
        if json_to_stdout {
            eprintln!("{}", c.line());
        } else {
            println!("{}", c.line());
        }
        checks.push(c);
    }
    let report = ValidationReport {
        passed: checks.iter().all(|c| c.passed),
        options: opts,
        checks,
    };
    if cfg.output.path.is_some() || json_to_stdout {
        write_json(cfg.output.path.as_deref(), &report)?;
    }
    Ok(report)
}
