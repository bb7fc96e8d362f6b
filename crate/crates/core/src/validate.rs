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


//! Acceptance checks, shared by the `validate` command and the test suite.
//!
//! Every check returns a [`CheckReport`] with its measurements; a check
//! fails when any measurement is out of tolerance, when it overruns its
//! wall-time budget, or when the computation itself errors.

use crate::asymptotics::{
    boundary_quantum_thermal, boundary_thermal_blackbody, classify_regime, critical_scales,
    mu_blackbody_low_temperature, mu_blackbody_resonant, mu_quantum_friction, mu_surface_thermal,
    regime_map, Regime,
};
use crate::error::Result;
use crate::force::{
    force, force_symmetric, force_with_kernel, mu_blackbody, mu_general_thermal_with_kernel,
    mu_qf_general_with_kernel, Accuracy, BlackbodyModel, ForceResult, Method, Route, Scenario,
};
use crate::green::{KernelBackend, KernelProjection, PlanarKernel};
use crate::material::Material;
use crate::polarizability::Atom;
use crate::quadrature::Rule;
use crate::spectra::{Order, Statistics};
use crate::spectral::{find_peak, mu_from_filter, planck_derivative_peak, SpectralKernel};
use crate::sweep::{sweep, sweep_sequential};
use crate::units::{thermal_energy, KB_EV_K};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Knobs for a validation run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationOptions {
    /// Relative tolerance handed to the force quadratures.
    pub rel_tol: f64,
    /// Worker count for the parallel half of the determinism check.
    pub workers: usize,
    /// Sign of the `zx` spin entry of every kernel built here. `-1` is a
    /// deliberately broken kernel for mutation testing.
    pub zx_sign: f64,
    /// Count wall-time budgets as part of pass/fail.
    pub enforce_runtime: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-5,
            workers: 8,
            zx_sign: 1.0,
            enforce_runtime: true,
        }
    }
}

impl ValidationOptions {
    fn accuracy(&self) -> Accuracy {
        Accuracy::default().with_rel_tol(self.rel_tol)
    }

    fn double_rule(&self) -> Rule {
        Rule::rel(self.rel_tol.min(1e-5) * 1e-2)
    }

    fn kernel(&self, z_nm: f64, projection: KernelProjection) -> Result<PlanarKernel> {
        let mut k = PlanarKernel::new(z_nm)?.with_projection(projection);
        k.zx_sign = self.zx_sign;
        Ok(k)
    }

    fn force(&self, scn: &Scenario, route: Route, order: Order) -> Result<ForceResult> {
        let kernel = self.kernel(scn.distance_nm, KernelProjection::Full)?;
        force_with_kernel(scn, Method::new(route, Statistics::Full, order), &self.accuracy(), kernel)
    }
}

/// How a measurement is compared against its target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// `|value/target - 1| <= tolerance`.
    Relative,
    /// `|value - target| <= tolerance`.
    Absolute,
    /// `value <= target`.
    AtMost,
    /// `value >= target`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

impl Measurement {
    fn new(name: impl Into<String>, value: f64, target: f64, tolerance: f64, comparison: Comparison) -> Self {
        let passed = match comparison {
            Comparison::Relative => (value / target - 1.0).abs() <= tolerance,
            Comparison::Absolute => (value - target).abs() <= tolerance,
            Comparison::AtMost => value <= target,
            Comparison::AtLeast => value >= target,
        };
        Self {
            name: name.into(),
            value,
            target,
            tolerance,
            comparison,
            passed,
        }
    }

    pub fn relative(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self::new(name, value, target, tol, Comparison::Relative)
    }

    pub fn absolute(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self::new(name, value, target, tol, Comparison::Absolute)
    }

    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, limit, 0.0, Comparison::AtMost)
    }

    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self::new(name, value, limit, 0.0, Comparison::AtLeast)
    }

    fn describe(&self) -> String {
        match self.comparison {
            Comparison::Relative => format!(
                "{}={:.6e} (target {:.6e}, rel dev {:.2e} / {:.1e})",
                self.name,
                self.value,
                self.target,
                (self.value / self.target - 1.0).abs(),
                self.tolerance
            ),
            Comparison::Absolute => format!(
                "{}={:.6} (target {:.6} +/- {:.1e})",
                self.name, self.value, self.target, self.tolerance
            ),
            Comparison::AtMost => format!("{}={:.3e} (<= {:e})", self.name, self.value, self.target),
            Comparison::AtLeast => format!("{}={:.3} (>= {})", self.name, self.value, self.target),
        }
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub measurements: Vec<Measurement>,
    pub elapsed_s: f64,
    pub budget_s: f64,
    pub error: Option<String>,
}

impl CheckReport {
    /// One summary line; failing measurements are listed first.
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut parts: Vec<String> = self
            .measurements
            .iter()
            .filter(|m| !m.passed)
            .map(|m| format!("FAILED {}", m.describe()))
            .collect();
        parts.extend(self.measurements.iter().filter(|m| m.passed).map(Measurement::describe));
        if let Some(e) = &self.error {
            parts.insert(0, format!("error: {e}"));
        }
        format!(
            "[{status}] criterion {:>2} {} ({:.2} s): {}",
            self.id,
            self.title,
            self.elapsed_s,
            parts.join("; ")
        )
    }
}

/// Every criterion, in order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub options: ValidationOptions,
    pub checks: Vec<CheckReport>,
}

/// `(id, title, wall-time budget in s)`.
pub const CRITERIA: [(u8, &str, f64); 10] = [
    (1, "kernel sum rules and backends", 1.0),
    (2, "surface-thermal asymptote", 5.0),
    (3, "quantum-friction asymptote", 5.0),
    (4, "full force reaches both asymptotes", 300.0),
    (5, "ordering routes agree", 300.0),
    (6, "black-body viscosity", 10.0),
    (7, "crossover scales", 60.0),
    (8, "regime map boundaries", 10.0),
    (9, "spectral-density picture", 60.0),
    (10, "sweep determinism and parallel speedup", 120.0),
];

fn measure(id: u8, opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    match id {
        1 => kernel_sum_rules(opts),
        2 => surface_thermal_asymptote(opts),
        3 => quantum_friction_asymptote(opts),
        4 => full_force_convergence(opts),
        5 => ordering_equivalence(opts),
        6 => blackbody_law(opts),
        7 => crossover_scales(opts),
        8 => regime_boundaries(opts),
        9 => spectral_picture(opts),
        10 => sweep_determinism(opts),
        _ => Err(crate::Error::InvalidParameter(format!("no acceptance criterion {id}"))),
    }
}

/// Runs one criterion by number (1-10).
pub fn run_check(id: u8, opts: &ValidationOptions) -> CheckReport {
    let (title, budget) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| (c.1.to_string(), c.2))
        .unwrap_or_else(|| ("unknown".to_string(), 0.0));
    let start = Instant::now();
    let outcome = measure(id, opts);
    let elapsed = start.elapsed().as_secs_f64();
    let (mut measurements, error) = match outcome {
        Ok(m) => (m, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    if opts.enforce_runtime {
        measurements.push(Measurement::at_most("runtime_s", elapsed, budget));
    }
    let passed = error.is_none() && measurements.iter().all(|m| m.passed);
    CheckReport {
        id,
        title,
        passed,
        measurements,
        elapsed_s: elapsed,
        budget_s: budget,
        error,
    }
}

/// Runs every criterion in order.
pub fn run_all(opts: &ValidationOptions) -> ValidationReport {
    let checks: Vec<CheckReport> = CRITERIA.iter().map(|c| run_check(c.0, opts)).collect();
    ValidationReport {
        passed: checks.iter().all(|c| c.passed),
        options: *opts,
        checks,
    }
}

fn kernel_sum_rules(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let mut out = Vec::new();
    for z in [1.0, 5.0, 50.0] {
        let k = opts.kernel(z, KernelProjection::Full)?;
        let m = k.weighted_moment(&Rule::rel(1e-10), |_| 1.0)?;
        let want = k.sum_rule();
        for (name, got, i) in [("xx", m.xx, 0), ("yy", m.yy, 1), ("zz", m.zz, 2)] {
            let w = want.get(i, i).re;
            out.push(Measurement::relative(format!("sum_rule_{name}_z{z}"), got, w, 1e-6));
        }
        let mut worst: f64 = 0.0;
        let numeric = k.with_backend(KernelBackend::Numeric);
        for s in [0.01, 0.2, 0.5, 1.0, 3.0, 8.0] {
            for q in [s * k.q_scale(), -s * k.q_scale()] {
                let a = k.entries(q).to_array();
                let b = numeric.entries(q).to_array();
                let scale = b.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
                for (x, y) in a.iter().zip(&b) {
                    worst = worst.max((x - y).abs() / scale);
                }
            }
        }
        out.push(Measurement::at_most(format!("backend_mismatch_z{z}"), worst, 1e-8));
    }
    Ok(out)
}

fn split_ratio(opts: &ValidationOptions, eval: impl Fn(&PlanarKernel) -> Result<f64>, z: f64) -> Result<(f64, f64)> {
    let full = eval(&opts.kernel(z, KernelProjection::Full)?)?;
    let t = eval(&opts.kernel(z, KernelProjection::Diagonal)?)?;
    let r = eval(&opts.kernel(z, KernelProjection::Spin)?)?;
    Ok((full, r / t))
}

fn surface_thermal_asymptote(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let (atom, m) = (Atom::reference(), Material::gold_like());
    let (z, t) = (5.0, 3.0);
    let rule = opts.double_rule();
    let (mu, ratio) = split_ratio(opts, |k| mu_general_thermal_with_kernel(&atom, &m, k, t, &rule), z)?;
    let want = mu_surface_thermal(atom.static_volume_nm3, m.resistivity()?, z, t);
    Ok(vec![
        Measurement::relative("mu_general_thermal/mu_T", mu, want, 5e-3),
        Measurement::absolute("mu_T_r/mu_T_t", ratio, -0.5, 3e-3),
    ])
}

fn quantum_friction_asymptote(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let (atom, m) = (Atom::reference(), Material::gold_like());
    let (z, v) = (5.0, 1.2e4);
    let rule = opts.double_rule();
    let (mu, ratio) = split_ratio(opts, |k| mu_qf_general_with_kernel(&atom, &m, k, v, &rule), z)?;
    let want = mu_quantum_friction(atom.static_volume_nm3, m.resistivity()?, z, v);
    Ok(vec![
        Measurement::relative("mu_qf_general/mu_QF", mu, want, 5e-3),
        Measurement::absolute("mu_QF_r/mu_QF_t", ratio, -5.0 / 7.0, 4e-3),
    ])
}

fn full_force_convergence(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let base = Scenario::reference();
    let rho = base.material.resistivity()?;
    let a0 = base.atom.static_volume_nm3;
    let (z, t) = (base.distance_nm, base.temperature_k);
    let v_c = critical_scales(z, 1.0, t, rho).v_c_m_s;
    let mu_t = mu_surface_thermal(a0, rho, z, t);
    let mut out = Vec::new();
    for frac in [0.02, 0.05, 0.1] {
        let scn = base.clone().with_velocity(frac * v_c);
        let f = opts.force(&scn, Route::Symmetric, Order::Leading)?;
        out.push(Measurement::relative(
            format!("mu(v={frac}v_c)/mu_T"),
            f.viscosity_kg_s,
            mu_t,
            0.02,
        ));
    }
    for v in [3.0e4, 5.0e4] {
        let scn = base.clone().with_velocity(v);
        let f = opts.force(&scn, Route::Symmetric, Order::Leading)?;
        let mu_qf = mu_quantum_friction(a0, rho, z, v);
        out.push(Measurement::relative(
            format!("mu(v={:.0}v_c)/mu_QF", v / v_c),
            f.viscosity_kg_s,
            mu_qf,
            0.05,
        ));
    }
    Ok(out)
}

/// Scenarios on which the three ordering routes are compared.
pub fn ordering_panel() -> Vec<Scenario> {
    let r = Scenario::reference();
    vec![
        r.clone(),
        r.clone().with_velocity(300.0),
        r.clone().with_velocity(5.0e4),
        r.clone().with_distance(2.0).with_velocity(5.0e3).with_temperature(30.0),
        r.with_distance(10.0).with_velocity(2.0e4).with_temperature(0.0),
    ]
}

fn ordering_equivalence(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let acc = opts.accuracy();
    let mut out = Vec::new();
    for (i, scn) in ordering_panel().iter().enumerate() {
        let n = opts.force(scn, Route::Normal, Order::Dressed)?;
        let s = opts.force(scn, Route::Shifted, Order::Dressed)?;
        let y = opts.force(scn, Route::Symmetric, Order::Dressed)?;
        for (name, a, b) in [("normal/symmetric", &n, &y), ("shifted/symmetric", &s, &y), ("normal/shifted", &n, &s)] {
            let combined = (a.error_n.abs() + b.error_n.abs()) / b.force_n.abs();
            let tol = combined.max(acc.rel_tol).min(1e-3);
            out.push(Measurement::relative(format!("scenario{}_{name}", i + 1), a.force_n, b.force_n, tol));
        }
    }
    Ok(out)
}

fn blackbody_law(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let atom = Atom::reference();
    let rel = opts.rel_tol.min(1e-6);
    let mut out = Vec::new();
    let mut logs = Vec::new();
    for t in [30.0, 100.0, 300.0] {
        let mu = mu_blackbody(&atom, t, BlackbodyModel::VacuumDressed, rel)?.viscosity_kg_s;
        let want = mu_blackbody_low_temperature(atom.static_volume_nm3, t);
        out.push(Measurement::relative(format!("mu_bb(T={t})/T8_law"), mu, want, 0.01));
        logs.push((t.ln(), (-mu).ln()));
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    out.push(Measurement::absolute("log_log_slope", sxy / sxx, 8.0, 0.05));
    let t_a = atom.resonance_ev / KB_EV_K;
    let mu = mu_blackbody(&atom, t_a, BlackbodyModel::Sharp, rel)?.viscosity_kg_s;
    let want = mu_blackbody_resonant(atom.static_volume_nm3, atom.resonance_ev, t_a);
    out.push(Measurement::relative("mu_bb(T_a)/resonant_form", mu, want, 0.01));
    Ok(out)
}

fn crossover_scales(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let base = Scenario::reference();
    let rho = base.material.resistivity()?;
    let a0 = base.atom.static_volume_nm3;
    let (v, t) = (base.velocity_m_s, base.temperature_k);
    let lambda_c = critical_scales(base.distance_nm, v, t, rho).lambda_c_nm;
    let identity = mu_surface_thermal(a0, rho, lambda_c, t) / mu_quantum_friction(a0, rho, lambda_c, v);
    let mut out = vec![Measurement::absolute("mu_T/mu_QF at lambda_c", identity, 1.0, 1e-9)];

    // full viscosity equals μ_QF + μ_T at the crossover, i.e. twice μ_QF
    let acc = opts.accuracy();
    let excess = |z: f64| -> Result<f64> {
        let scn = base.clone().with_distance(z);
        let f = force(&scn, Method::new(Route::Symmetric, Statistics::Full, Order::Dressed), &acc)?;
        Ok(f.viscosity_kg_s / mu_quantum_friction(a0, rho, z, v) - 2.0)
    };
    let (mut lo, mut hi) = (0.25 * lambda_c, 4.0 * lambda_c);
    let (mut g_lo, g_hi) = (excess(lo)?, excess(hi)?);
    if g_lo.signum() == g_hi.signum() {
        return Err(crate::Error::InvalidParameter(format!(
            "no crossover of the full viscosity between {lo:.3} and {hi:.3} nm"
        )));
    }
    while hi / lo > 1.0 + 1e-4 {
        let mid = (lo * hi).sqrt();
        let g = excess(mid)?;
        if g.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    out.push(Measurement::relative("full crossover z/lambda_c", (lo * hi).sqrt(), lambda_c, 0.1));
    let rough = critical_scales(10.0, 1.0, 3.0, rho).v_c_rough_m_s;
    out.push(Measurement::absolute("rough v_c(3 K, 10 nm) km/s", rough / 1e3, 4.0, 0.1));
    Ok(out)
}

fn regime_boundaries(_opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let atom = Atom::reference();
    let rho = Material::gold_like().resistivity()?;
    let a0 = atom.static_volume_nm3;
    let mut worst_qt: f64 = 0.0;
    let mut worst_tb: f64 = 0.0;
    let mut flips = 0usize;
    let mut probes = 0usize;
    for v in [100.0, 1.0e3, 1.2e4, 1.0e5] {
        let zt = boundary_quantum_thermal(v);
        for t in [1.0, 3.0, 10.0, 30.0] {
            let z = zt / t;
            let r = mu_quantum_friction(a0, rho, z, v) / mu_surface_thermal(a0, rho, z, t);
            worst_qt = worst_qt.max((r - 1.0).abs());
        }
    }
    for t in [1.0, 3.0, 30.0, 300.0] {
        let z = boundary_thermal_blackbody(t, rho) / t;
        let r = mu_surface_thermal(a0, rho, z, t) / mu_blackbody_low_temperature(a0, t);
        worst_tb = worst_tb.max((r - 1.0).abs());
        // classification changes across the curve when it is the active one
        let v = 1.0;
        let near = classify_regime(a0, atom.resonance_ev, rho, 0.98 * z, v, t);
        let far = classify_regime(a0, atom.resonance_ev, rho, 1.02 * z, v, t);
        probes += 1;
        if near == Regime::SurfaceThermal && far == Regime::BlackBody {
            flips += 1;
        }
    }
    let zs: Vec<f64> = (0..50).map(|i| 10f64.powf(i as f64 / 49.0 * 3.0)).collect();
    let ts: Vec<f64> = (0..50).map(|i| 10f64.powf(i as f64 / 49.0 * 3.0)).collect();
    let v_c = critical_scales(5.0, 1.0, 3.0, rho).v_c_m_s;
    let start = Instant::now();
    let map = regime_map(a0, atom.resonance_ev, rho, v_c, &zs, &ts);
    let map_s = start.elapsed().as_secs_f64();
    let labelled = map.len() as f64;
    Ok(vec![
        Measurement::at_most("quantum/thermal boundary imbalance", worst_qt, 1e-6),
        Measurement::at_most("thermal/black-body boundary imbalance", worst_tb, 1e-6),
        Measurement::absolute("classification flips across boundary", flips as f64, probes as f64, 0.0),
        Measurement::absolute("50x50 map cells", labelled, 2500.0, 0.0),
        Measurement::at_most("50x50 map seconds", map_s, 10.0),
    ])
}

fn spectral_picture(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let (atom, m) = (Atom::reference(), Material::gold_like());
    let z = 5.0;
    let sk = SpectralKernel::new(z, &Rule::rel(1e-11))?;
    let eta = |e: f64| crate::spectral::eta_full(&atom, &m, &sk, e, Order::Dressed);
    let wa = atom.resonance_ev;
    let atomic = find_peak(0.9 * wa, 1.1 * wa, eta)?;
    let Material::Drude { plasma_ev: wp, .. } = m else {
        return Err(crate::Error::InvalidParameter("the spectral check needs a Drude surface".into()));
    };
    let sp = wp / 2f64.sqrt();
    let surface = find_peak(0.8 * sp, 1.2 * sp, eta)?;
    let t = 300.0;
    let x = planck_derivative_peak(t) / thermal_energy(t);
    let t_f = 30.0;
    let filter = mu_from_filter(&atom, &m, z, t_f, opts.rel_tol.min(1e-6))?;
    let general = crate::force::mu_general_thermal(&atom, &m, z, t_f, KernelProjection::Full, &opts.double_rule())?;
    Ok(vec![
        Measurement::relative("eta atomic peak / omega_a", atomic, wa, 0.02),
        Measurement::relative("eta surface peak / (omega_p/sqrt2)", surface, sp, 0.02),
        Measurement::relative("planck derivative peak / k_BT", x, 3.83, 5e-3),
        Measurement::relative("mu_from_filter/mu_general_thermal (30 K)", filter, general, 0.05),
    ])
}

/// Scenarios of the determinism sweep (40 distances at 12 km/s, 3 K).
pub fn determinism_panel() -> Vec<Scenario> {
    (0..40)
        .map(|i| Scenario::reference().with_distance(2.0 * 10f64.powf(i as f64 / 39.0)))
        .collect()
}

fn sweep_determinism(opts: &ValidationOptions) -> Result<Vec<Measurement>> {
    let acc = opts.accuracy();
    let items = determinism_panel();
    let eval = |s: &Scenario| {
        force_symmetric(s, Statistics::Full, Order::Dressed, &acc).map(|f| (f.force_n, f.error_n))
    };
    let start = Instant::now();
    let one = sweep_sequential(&items, eval);
    let t_one = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let many = sweep(&items, eval, opts.workers);
    let t_many = start.elapsed().as_secs_f64();
    let mut identical = 0usize;
    for (a, b) in one.iter().zip(&many) {
        match (&a.result, &b.result) {
            (Ok(x), Ok(y)) if x.0.to_bits() == y.0.to_bits() && x.1.to_bits() == y.1.to_bits() => identical += 1,
            (Err(e), _) | (_, Err(e)) => return Err(e.clone()),
            _ => {}
        }
    }
    Ok(vec![
        Measurement::absolute("bit-identical points", identical as f64, items.len() as f64, 0.0),
        Measurement::at_least(format!("speedup at {} workers", opts.workers), t_one / t_many, 3.0),
        Measurement::absolute(
            "hardware threads",
            crate::sweep::available_workers() as f64,
            crate::sweep::available_workers() as f64,
            0.0,
        ),
    ])
}
