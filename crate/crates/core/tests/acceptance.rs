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


//! Acceptance criteria 1-10. Each test writes one PASS/FAIL line to stderr
//! (uncaptured) and fails when its criterion fails.

use emvisc::validate::{run_check, ValidationOptions};
use std::io::Write;

fn criterion(id: u8) {
    let report = run_check(id, &ValidationOptions::default());
    let _ = writeln!(std::io::stderr(), "{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_kernel_sum_rules() {
    criterion(1);
}

#[test]
fn criterion_02_surface_thermal_asymptote() {
    criterion(2);
}

#[test]
fn criterion_03_quantum_friction_asymptote() {
    criterion(3);
}

#[test]
fn criterion_04_full_force_convergence() {
    criterion(4);
}

#[test]
fn criterion_05_ordering_equivalence() {
    criterion(5);
}

#[test]
fn criterion_06_blackbody_law() {
    criterion(6);
}

#[test]
fn criterion_07_crossover_scales() {
    criterion(7);
}

#[test]
fn criterion_08_regime_map() {
    criterion(8);
}

#[test]
fn criterion_09_spectral_density() {
    criterion(9);
}

#[test]
fn criterion_10_sweep_determinism_and_speedup() {
    criterion(10);
}

#[test]
fn perturbed_kernel_sign_breaks_spin_checks() {
    let opts = ValidationOptions {
        zx_sign: -1.0,
        ..ValidationOptions::default()
    };
    // thermal ratio flips from -1/2 to +1/2
    let r = run_check(2, &opts);
    let ratio = r.measurements.iter().find(|m| m.name == "mu_T_r/mu_T_t").unwrap();
    assert!(!ratio.passed && (ratio.value - 0.5).abs() < 1e-3, "{}", r.line());
    // the full force picks up a spin part of the wrong sign
    let r = run_check(4, &opts);
    assert!(!r.passed, "{}", r.line());
    // Tr[K̃ᵀK] pairs zx with zx, so the quantum-friction kernel cannot see this flip
    assert!(run_check(3, &opts).passed);
}

#[test]
fn tighter_tolerance_still_passes_asymptotes() {
    let opts = ValidationOptions {
        rel_tol: 1e-7,
        enforce_runtime: false,
        ..ValidationOptions::default()
    };
    for id in [2, 3, 9] {
        let r = run_check(id, &opts);
        assert!(r.passed, "{}", r.line());
    }
}
