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


//! End-to-end runs of the `emvisc` binary.

use std::path::Path;
use std::process::{Command, Output};

fn emvisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emvisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Rows of a CSV as maps from column name to cell, skipping `#` lines.
fn table(text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let head: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    r.records()
        .map(|rec| {
            let rec = rec.unwrap();
            head.iter().cloned().zip(rec.iter().map(String::from)).collect()
        })
        .collect()
}

fn num(row: &std::collections::HashMap<String, String>, col: &str) -> f64 {
    row[col].parse().unwrap_or_else(|_| panic!("{col} = {:?}", row[col]))
}

#[test]
fn viscosity_json_at_reference_point() {
    let o = emvisc(&["viscosity", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ratio = v["mu_over_quantum_friction"].as_f64().unwrap();
    // the thermal part adds (v_c/v)² ≈ 0.18 on top of quantum friction
    assert!(ratio > 1.1 && ratio < 1.25, "{ratio}");
    assert_eq!(v["regime"], "quantum_friction");
    let (t, r, mu) = (
        v["mu_translational"].as_f64().unwrap(),
        v["mu_rotational"].as_f64().unwrap(),
        v["mu"].as_f64().unwrap(),
    );
    assert!(((t + r) / mu - 1.0).abs() < 1e-12);
}

#[test]
fn viscosity_csv_uses_ten_significant_digits() {
    let o = emvisc(&["viscosity"]);
    assert!(o.status.success());
    let rows = table(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let mu = &rows[0]["mu"];
    let mantissa = mu.trim_start_matches('-').split('e').next().unwrap();
    assert_eq!(mantissa.replace('.', "").len(), 10, "{mu}");
}

#[test]
fn zero_velocity_points_to_the_asymptotic_command() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "v0.toml", "[scenario]\nmaterial = \"gold\"\nvelocity_m_s = 0.0\n");
    let o = emvisc(&["viscosity", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("regime-map"), "{}", stderr(&o));
}

#[test]
fn missing_material_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "m.toml", "[scenario]\ndistance_nm = 5.0\n");
    for cmd in ["viscosity", "spectral-density", "regime-map"] {
        let o = emvisc(&[cmd, "--config", &cfg]);
        assert_eq!(o.status.code(), Some(1), "{cmd}");
        assert!(stderr(&o).contains("scenario.material"));
    }
}

#[test]
fn bad_arguments_exit_with_validation_code() {
    assert_eq!(emvisc(&["viscosity", "--route", "sideways"]).status.code(), Some(1));
    assert_eq!(emvisc(&["--nonsense"]).status.code(), Some(1));
    assert_eq!(emvisc(&["viscosity", "--route", "normal", "--mode", "lte"]).status.code(), Some(1));
    assert_eq!(emvisc(&["viscosity", "--tol", "-1"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "typo.toml", "[scenario]\ndistanse_nm = 5.0\n");
    assert_eq!(emvisc(&["viscosity", "--config", &cfg]).status.code(), Some(1));
}

#[test]
fn distance_sweep_crosses_over_from_quantum_friction() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "z.toml",
        r#"
[scenario]
material = "gold"
distance_nm = { start = 1.0, stop = 200.0, points = 12 }
velocity_m_s = 12000.0
temperature_k = 3.0
[output]
timing = false
"#,
    );
    let o = emvisc(&["sweep", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = table(&stdout(&o));
    assert_eq!(rows.len(), 12);
    let ratio: Vec<f64> = rows.iter().map(|r| num(r, "mu_over_quantum_friction")).collect();
    assert!((ratio[0] - 1.0).abs() < 0.05, "{}", ratio[0]);
    // below ~2 nm surface dressing shifts the ratio by a few percent
    assert!(ratio[2..].windows(2).all(|w| w[1] > w[0]));
    // far side: μ ≈ μ_T, so μ/μ_QF grows like z²
    let (z1, z2) = (num(&rows[10], "distance_nm"), num(&rows[11], "distance_nm"));
    let growth = (ratio[11] / ratio[10]).ln() / (z2 / z1).ln();
    assert!((growth - 2.0).abs() < 0.1, "{growth}");
    assert!(rows.iter().all(|r| r["status"] == "ok"));
}

#[test]
fn velocity_sweep_has_plateau_then_square_rise() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "v.toml",
        r#"
[scenario]
material = "gold"
distance_nm = 5.0
velocity_m_s = { start = 50.0, stop = 100000.0, points = 12 }
temperature_k = 3.0
"#,
    );
    let o = emvisc(&["sweep", "--config", &cfg, "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pts: Vec<(f64, f64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["velocity_m_s"].as_f64().unwrap(), r["result"]["mu"].as_f64().unwrap()))
        .collect();
    assert!((pts[1].1 / pts[0].1 - 1.0).abs() < 0.01, "plateau");
    let n = pts.len();
    let slope = (pts[n - 1].1 / pts[n - 2].1).ln() / (pts[n - 1].0 / pts[n - 2].0).ln();
    assert!((slope - 2.0).abs() < 0.15, "{slope}");
}

#[test]
fn temperature_sweep_has_plateau_then_square_rise() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "t.toml",
        r#"
[scenario]
material = "gold"
distance_nm = 5.0
velocity_m_s = 12000.0
temperature_k = { start = 0.1, stop = 200.0, points = 10 }
"#,
    );
    let o = emvisc(&["sweep", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = table(&stdout(&o));
    let mu: Vec<f64> = rows.iter().map(|r| num(r, "mu")).collect();
    let t: Vec<f64> = rows.iter().map(|r| num(r, "temperature_k")).collect();
    assert!((mu[1] / mu[0] - 1.0).abs() < 0.01, "plateau");
    let n = mu.len();
    let slope = (mu[n - 1] / mu[n - 2]).ln() / (t[n - 1] / t[n - 2]).ln();
    assert!((slope - 2.0).abs() < 0.15, "{slope}");
}

#[test]
fn sweep_output_is_stable_across_runs_and_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "d.toml",
        r#"
[scenario]
material = "gold"
distance_nm = { start = 2.0, stop = 20.0, points = 5 }
velocity_m_s = { start = 1000.0, stop = 20000.0, points = 2 }
temperature_k = 3.0
[output]
timing = false
"#,
    );
    let a = emvisc(&["sweep", "--config", &cfg, "--workers", "1"]);
    let b = emvisc(&["sweep", "--config", &cfg, "--workers", "4"]);
    let c = emvisc(&["sweep", "--config", &cfg, "--workers", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(b.stdout, c.stdout);
}

#[test]
fn sweep_needs_a_range_and_flags_failed_rows() {
    let o = emvisc(&["sweep"]);
    assert_eq!(o.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "f.toml",
        r#"
[scenario]
material = "gold"
distance_nm = 5.0
velocity_m_s = { start = 0.0, stop = 1000.0, points = 2, spacing = "linear" }
"#,
    );
    let out = dir.path().join("rows.csv");
    let o = emvisc(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let rows = table(&std::fs::read_to_string(&out).unwrap());
    assert_eq!(rows[0]["status"], "failed");
    assert_eq!(rows[1]["status"], "ok");
}

#[test]
fn regime_map_grid_and_boundaries() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "r.toml",
        r#"
[scenario]
material = "gold"
distance_nm = { start = 1.0, stop = 1000.0, points = 5 }
velocity_m_s = "critical"
temperature_k = { start = 1.0, stop = 1000.0, points = 4 }
"#,
    );
    let o = emvisc(&["regime-map", "--config", &cfg]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = table(&stdout(&o));
    let cells = rows.iter().filter(|r| r["series"] == "cell").count();
    assert_eq!(cells, 20);
    for series in ["boundary_quantum_thermal", "boundary_thermal_blackbody"] {
        let b: Vec<_> = rows.iter().filter(|r| r["series"] == series).collect();
        assert_eq!(b.len(), 4);
        for r in b {
            let (qf, th, bb) = (
                num(r, "mu_quantum_friction"),
                num(r, "mu_surface_thermal"),
                num(r, "mu_blackbody"),
            );
            let (x, y) = if series == "boundary_quantum_thermal" { (qf, th) } else { (th, bb) };
            assert!((x / y - 1.0).abs() < 1e-6);
        }
    }
    // at v = v_c the reference point sits on the quantum/thermal boundary
    let head = stdout(&o).lines().next().unwrap().to_string();
    assert!(head.starts_with("# velocity_m_s="));
}

#[test]
fn regime_map_single_cell() {
    let o = emvisc(&["regime-map"]);
    assert!(o.status.success());
    let rows = table(&stdout(&o));
    let cells: Vec<_> = rows.iter().filter(|r| r["series"] == "cell").collect();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["regime"], "quantum_friction");
}

#[test]
fn spectral_density_curves_and_markers() {
    let o = emvisc(&["spectral-density"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("# eta_normalization=eta_lowfreq"));
    assert!(text.contains("# planck_normalization=half_maximum"));
    let rows = table(&text);
    assert!(rows[0].contains_key("omega_eV") && rows[0].contains_key("kind"));
    let marker = |k: &str| rows.iter().find(|r| r["kind"] == k).map(|r| num(r, "omega_eV"));
    assert!((marker("peak_atomic").unwrap() / 1.3 - 1.0).abs() < 0.02);
    assert!((marker("peak_surface").unwrap() / (9.0 / 2f64.sqrt()) - 1.0).abs() < 0.02);
    let planck = rows.iter().find(|r| r["kind"] == "peak_planck").unwrap();
    assert!((num(planck, "value") - 2.0).abs() < 1e-9);
    let kinds = ["eta_full", "eta_nearfield", "eta_lowfreq", "planck_derivative"];
    for k in kinds {
        assert_eq!(rows.iter().filter(|r| r["kind"] == k).count(), 4 * 64 + 1, "{k}");
    }
}

#[test]
fn spectral_density_rejects_empty_range() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "s.toml",
        "[scenario]\nmaterial = \"gold\"\n[spectral]\nomega_min_ev = 2.0\nomega_max_ev = 1.0\n",
    );
    let o = emvisc(&["spectral-density", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("empty frequency range"));
}

#[test]
fn validate_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let o = emvisc(&["validate", "--check", "1", "--check", "8", "--out", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 2);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 2);

    let o = emvisc(&["validate", "--check", "2", "--perturb-kernel-sign"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("[FAIL]"));

    assert_eq!(emvisc(&["validate", "--check", "11"]).status.code(), Some(1));
}

#[test]
fn validate_json_goes_to_stdout_with_lines_on_stderr() {
    let o = emvisc(&["validate", "--check", "3", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"][0]["id"], 3);
    assert!(stderr(&o).contains("[PASS] criterion  3"));
}

#[test]
fn flags_override_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "o.toml",
        "[scenario]\nmaterial = \"gold\"\n[computation]\nroute = \"shifted\"\norder = \"dressed\"\n[output]\nformat = \"csv\"\n",
    );
    let o = emvisc(&["viscosity", "--config", &cfg, "--format", "json", "--order", "leading"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"]["route"], "shifted");
    assert_eq!(v["method"]["order"], "leading");
}
