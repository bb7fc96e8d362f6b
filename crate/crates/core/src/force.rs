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


//! Drag force on the moving atom.
//!
//! Three equivalent evaluations of the surface contribution are provided:
//! normal ordering (`Route::Normal`), the Doppler-shifted form
//! (`Route::Shifted`) and the symmetric form (`Route::Symmetric`). All of
//! them reduce to one-dimensional energy integrals over the moments of
//! [`crate::doppler`]; the normal-ordered route needs an extra wave-number
//! integral because its polarizability sits at `qħv - E`.
//!
//! Every route splits the trace `Tr[X G]` into its diagonal part (`μ^t`) and
//! its spin part (`μ^r`) in the same pass.

use crate::asymptotics::{self, CriticalScales, Regime};
use crate::doppler::{bose, bose_im_fresnel, DopplerContext, ShiftedMoments};
use crate::error::{Error, Result};
use crate::green::{vacuum_im_green_local, KernelProjection, Moment, PlanarKernel};
use crate::material::Material;
use crate::polarizability::Atom;
use crate::quadrature::{cubature, try_integrate, Axis, Estimate, Rule};
use crate::spectra::{add, dipole_spectrum, kappa_from_moments, response, Order, Response, Statistics};
use crate::tensor::Tensor3;
use crate::units::{
    hbar_v, thermal_energy, C_M_S, EV_J, EV_PER_NM_N, HBAR_J_S,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cell::Cell;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

/// Largest accepted `|v|/c`.
pub const MAX_BETA: f64 = 1e-3;
/// Energy integrals stop at this many natural scales.
pub const ENERGY_CUTOFF: f64 = 60.0;

/// Atom, surface and kinematics of one force evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub atom: Atom,
    pub material: Material,
    pub distance_nm: f64,
    pub velocity_m_s: f64,
    pub temperature_k: f64,
}

impl Scenario {
    /// Reference atom above the gold-like Drude surface at 5 nm, 12 km/s, 3 K.
    pub fn reference() -> Self {
        Self {
            atom: Atom::reference(),
            material: Material::gold_like(),
            distance_nm: 5.0,
            velocity_m_s: 1.2e4,
            temperature_k: 3.0,
        }
    }

    pub fn with_distance(mut self, z_nm: f64) -> Self {
        self.distance_nm = z_nm;
        self
    }

    pub fn with_velocity(mut self, v_m_s: f64) -> Self {
        self.velocity_m_s = v_m_s;
        self
    }

    pub fn with_temperature(mut self, t_k: f64) -> Self {
        self.temperature_k = t_k;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.atom.validate()?;
        self.material.validate()?;
        PlanarKernel::new(self.distance_nm)?;
        if !self.velocity_m_s.is_finite() || self.velocity_m_s.abs() >= MAX_BETA * C_M_S {
            return Err(Error::InvalidParameter(format!(
                "velocity must satisfy |v| < {} m/s, got {}",
                MAX_BETA * C_M_S,
                self.velocity_m_s
            )));
        }
        if !(self.temperature_k >= 0.0 && self.temperature_k.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "temperature must be non-negative, got {} K",
                self.temperature_k
            )));
        }
        Ok(())
    }

    pub fn kt(&self) -> f64 {
        thermal_energy(self.temperature_k)
    }

    pub fn hbar_v(&self) -> f64 {
        hbar_v(self.velocity_m_s)
    }

    /// Doppler or thermal energy reaches the atomic resonance.
    pub fn is_resonant(&self) -> bool {
        asymptotics::is_resonant(
            self.distance_nm,
            self.velocity_m_s.abs(),
            self.temperature_k,
            self.atom.resonance_ev,
        )
    }
}

/// Force evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Normal,
    Shifted,
    #[default]
    Symmetric,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Normal, Route::Shifted, Route::Symmetric];

    pub fn name(&self) -> &'static str {
        match self {
            Route::Normal => "normal",
            Route::Shifted => "shifted",
            Route::Symmetric => "symmetric",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown route `{s}`")))
    }
}

/// Route plus model switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Method {
    pub route: Route,
    pub statistics: Statistics,
    pub order: Order,
}

impl Method {
    pub fn new(route: Route, statistics: Statistics, order: Order) -> Self {
        Self {
            route,
            statistics,
            order,
        }
    }
}

/// Quadrature tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    /// Relative tolerance of the outermost (energy) integral.
    pub rel_tol: f64,
    /// Relative tolerance of the innermost moment integrals.
    pub inner_rel_tol: f64,
    /// Evaluation budget of each integration level.
    pub max_evaluations: usize,
}

impl Default for Accuracy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-5,
            inner_rel_tol: 1e-9,
            max_evaluations: 50_000,
        }
    }
}

impl Accuracy {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.inner_rel_tol = self.inner_rel_tol.min(rel_tol * 1e-3);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.inner_rel_tol > 0.0 && self.max_evaluations > 0) {
            return Err(Error::InvalidParameter(
                "tolerances and budget must be positive".into(),
            ));
        }
        Ok(())
    }

    fn outer(&self) -> Rule {
        Rule::rel(self.rel_tol).budget(self.max_evaluations)
    }

    fn middle(&self) -> Rule {
        Rule::rel((self.rel_tol * 1e-2).max(self.inner_rel_tol)).budget(self.max_evaluations)
    }

    fn inner(&self) -> Rule {
        Rule::rel(self.inner_rel_tol)
    }
}

/// Force on the atom with its diagonal/spin decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceResult {
    pub method: Method,
    /// Total surface-induced force along the motion, N (negative is drag).
    pub force_n: f64,
    /// Part carried by the transpose-symmetric kernel, N.
    pub force_translational_n: f64,
    /// Part carried by the spin kernel, N.
    pub force_rotational_n: f64,
    /// `F/v` in kg/s; NaN at `v = 0`.
    pub viscosity_kg_s: f64,
    pub viscosity_translational_kg_s: f64,
    pub viscosity_rotational_kg_s: f64,
    /// Quadrature error estimate of the outer integral, N.
    pub error_n: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub elapsed_s: f64,
    /// Resonant regime: results use regularized poles and lose accuracy.
    pub resonant: bool,
}

impl ForceResult {
    fn from_parts(
        method: Method,
        scn: &Scenario,
        parts_ev_nm: [f64; 2],
        error_ev_nm: f64,
        evaluations: usize,
        converged: bool,
        elapsed_s: f64,
    ) -> Self {
        let t = parts_ev_nm[0] * EV_PER_NM_N;
        let r = parts_ev_nm[1] * EV_PER_NM_N;
        let v = scn.velocity_m_s;
        let per_v = |f: f64| if v == 0.0 { f64::NAN } else { f / v };
        Self {
            method,
            force_n: t + r,
            force_translational_n: t,
            force_rotational_n: r,
            viscosity_kg_s: per_v(t + r),
            viscosity_translational_kg_s: per_v(t),
            viscosity_rotational_kg_s: per_v(r),
            error_n: error_ev_nm * EV_PER_NM_N,
            evaluations,
            converged,
            elapsed_s,
            resonant: scn.is_resonant(),
        }
    }

    /// Relative quadrature error of the force.
    pub fn relative_error(&self) -> f64 {
        self.error_n / self.force_n.abs().max(f64::MIN_POSITIVE)
    }
}

/// `Tr[Y M]` split into the diagonal and the spin (`xz`/`zx`) contributions.
fn split(y: &Tensor3, m: &Moment<f64>) -> [f64; 2] {
    let i = Complex64::new(0.0, 1.0);
    let t = y.get(0, 0) * m.xx + y.get(1, 1) * m.yy + y.get(2, 2) * m.zz;
    let r = y.get(0, 2) * (i * m.spin_zx) - y.get(2, 0) * (i * m.spin_xz);
    [t.re, r.re]
}

struct Engine<'a> {
    scn: &'a Scenario,
    method: Method,
    acc: Accuracy,
    ctx: DopplerContext<'a>,
    linewidth: f64,
    inner_evaluations: Cell<usize>,
}

impl<'a> Engine<'a> {
    fn new(scn: &'a Scenario, method: Method, acc: Accuracy, kernel: PlanarKernel) -> Result<Self> {
        scn.validate()?;
        acc.validate()?;
        if method.route == Route::Normal && method.statistics == Statistics::Lte {
            return Err(Error::Unsupported(
                "local thermal equilibrium is available in the shifted and symmetric routes only"
                    .into(),
            ));
        }
        // the dressed pole is regularized by surface losses unless the
        // resonance itself is reached
        let linewidth = match method.order {
            Order::Leading => scn.atom.numerical_linewidth(),
            Order::Dressed if scn.is_resonant() => scn.atom.numerical_linewidth(),
            Order::Dressed => 0.0,
        };
        Ok(Self {
            scn,
            method,
            acc,
            ctx: DopplerContext {
                kernel,
                material: &scn.material,
                hbar_v: scn.hbar_v(),
                kt: scn.kt(),
                rule: acc.inner(),
            },
            linewidth,
            inner_evaluations: Cell::new(0),
        })
    }

    fn moments(&self, e: f64) -> Result<ShiftedMoments> {
        let m = self.ctx.moments(e)?;
        self.inner_evaluations.set(self.inner_evaluations.get() + m.evaluations);
        Ok(m)
    }

    fn response(&self, e: f64, m: &ShiftedMoments) -> Result<Response> {
        response(&self.scn.atom, self.method.order, e, self.linewidth, m, false)
    }

    fn energy_scale(&self) -> f64 {
        self.ctx.kt.max(self.ctx.hbar_v.abs() * self.ctx.kernel.q_scale())
    }

    fn energy_axis(&self) -> Axis {
        let scale = self.energy_scale();
        let top = ENERGY_CUTOFF * scale;
        let mut b = vec![scale, 4.0 * scale, 15.0 * scale];
        let wa = self.scn.atom.resonance_ev;
        b.push(wa);
        for k in 3..=8 {
            let d = 10f64.powi(-k);
            b.push(wa * (1.0 - d));
            b.push(wa * (1.0 + d));
        }
        if let Some(sp) = self.scn.material.surface_plasmon_energy() {
            b.push(sp);
        }
        Axis::finite(0.0, top).with_breakpoints(b)
    }

    fn symmetric_density(&self, e: f64) -> Result<[f64; 2]> {
        let m = self.moments(e)?;
        let a = self.response(e, &m)?.coupling;
        let ah = a.adjoint();
        let am0a = a * m.m0.to_tensor() * ah;
        let first = split(&am0a, &m.n1);
        let second = match self.method.statistics {
            Statistics::Full => split(&(a * m.n0.to_tensor() * ah), &m.m1),
            Statistics::Lte => {
                let n = bose(e, self.ctx.kt);
                let s = split(&am0a, &m.m1);
                [n * s[0], n * s[1]]
            }
        };
        let c = 2.0 / PI;
        Ok([c * (first[0] - second[0]), c * (first[1] - second[1])])
    }

    fn shifted_density(&self, e: f64) -> Result<[f64; 2]> {
        let m = self.moments(e)?;
        let resp = self.response(e, &m)?;
        let kappa = kappa_from_moments(&m, e, self.ctx.kt, self.method.statistics);
        let s = dipole_spectrum(&resp, &kappa);
        let first = split(&resp.dissipative, &add(&m.m1, &m.n1));
        let second = split(&s, &m.m1);
        Ok([
            2.0 * (first[0] / PI - second[0]),
            2.0 * (first[1] / PI - second[1]),
        ])
    }

    /// Coarse size of the normal-route density, used as an absolute floor
    /// for its inner wave-number integral in the far tail.
    fn normal_density_scale(&self) -> Result<f64> {
        let pilot = Rule::rel(1e-3).budget(self.acc.max_evaluations);
        let scale = self.energy_scale();
        let mut peak: f64 = 0.0;
        for f in [0.3, 1.0, 3.0] {
            let d = self.normal_density(f * scale, &pilot)?;
            peak = peak.max(d[0].abs()).max(d[1].abs());
        }
        Ok(peak)
    }

    fn normal_density(&self, e: f64, rule: &Rule) -> Result<[f64; 2]> {
        let material = self.ctx.material;
        let kt = self.ctx.kt;
        let hv = self.ctx.hbar_v;
        let im_r = material.fresnel(e)?.im;
        let n_im = bose_im_fresnel(material, e, kt)?;
        let kernel = &self.ctx.kernel;
        let qmax = kernel.q_max();
        let mut b = vec![0.0, kernel.q_scale(), -kernel.q_scale()];
        if hv != 0.0 {
            let mut shifts = vec![0.0, 4.0 * kt, -4.0 * kt];
            let wa = self.scn.atom.resonance_ev;
            shifts.extend([wa, -wa]);
            if let Some(sp) = material.surface_plasmon_energy() {
                shifts.extend([sp, -sp]);
            }
            b.extend(shifts.iter().map(|c| (e + c) / hv));
        }
        let axis = Axis::finite(-qmax, qmax).with_breakpoints(b);
        let est = try_integrate(&axis, rule, |q: f64| -> Result<[f64; 2]> {
            let ep = q * hv - e;
            let m = self.moments(ep)?;
            let resp = self.response(ep, &m)?;
            let kappa = kappa_from_moments(&m, ep, kt, Statistics::Full);
            let x = resp.dissipative.scale_re(n_im / PI)
                + dipole_spectrum(&resp, &kappa).scale_re(im_r);
            let s = split(&x, &kernel.entries(q).transpose());
            let w = -2.0 * q / (2.0 * PI);
            Ok([w * s[0], w * s[1]])
        })?;
        let est = est.require_converged()?;
        Ok(est.value)
    }

    fn run(&self) -> Result<ForceResult> {
        let start = Instant::now();
        if self.energy_scale() == 0.0 {
            return Ok(ForceResult::from_parts(self.method, self.scn, [0.0; 2], 0.0, 0, true, 0.0));
        }
        let axis = self.energy_axis();
        let mut middle = self.acc.middle();
        if self.method.route == Route::Normal {
            middle.abs_tol = 1e-2 * self.acc.rel_tol * self.normal_density_scale()?;
        }
        let est: Estimate<[f64; 2]> = try_integrate(&axis, &self.acc.outer(), |e: f64| {
            match self.method.route {
                Route::Symmetric => self.symmetric_density(e),
                Route::Shifted => self.shifted_density(e),
                Route::Normal => self.normal_density(e, &middle),
            }
        })?;
        Ok(ForceResult::from_parts(
            self.method,
            self.scn,
            est.value,
            est.error,
            est.evaluations + self.inner_evaluations.get(),
            est.converged,
            start.elapsed().as_secs_f64(),
        ))
    }
}

/// Surface-induced force by the requested route.
pub fn force(scn: &Scenario, method: Method, acc: &Accuracy) -> Result<ForceResult> {
    force_with_kernel(scn, method, acc, PlanarKernel::new(scn.distance_nm)?)
}

/// As [`force`] with an explicitly configured kernel (backend, projection).
pub fn force_with_kernel(
    scn: &Scenario,
    method: Method,
    acc: &Accuracy,
    kernel: PlanarKernel,
) -> Result<ForceResult> {
    Engine::new(scn, method, *acc, kernel)?.run()
}

pub fn force_normal_ordering(scn: &Scenario, order: Order, acc: &Accuracy) -> Result<ForceResult> {
    force(scn, Method::new(Route::Normal, Statistics::Full, order), acc)
}

pub fn force_shifted(
    scn: &Scenario,
    statistics: Statistics,
    order: Order,
    acc: &Accuracy,
) -> Result<ForceResult> {
    force(scn, Method::new(Route::Shifted, statistics, order), acc)
}

pub fn force_symmetric(
    scn: &Scenario,
    statistics: Statistics,
    order: Order,
    acc: &Accuracy,
) -> Result<ForceResult> {
    force(scn, Method::new(Route::Symmetric, statistics, order), acc)
}

/// Force with the bare polarizability `α_B` in place of the dressed one.
pub fn force_leading_order(scn: &Scenario, statistics: Statistics, acc: &Accuracy) -> Result<ForceResult> {
    force_symmetric(scn, statistics, Order::Leading, acc)
}

/// Polarizability model used for black-body friction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlackbodyModel {
    /// Bare line with the numerical linewidth.
    Sharp,
    /// Bare line dressed by the free-space radiation reaction.
    #[default]
    VacuumDressed,
}

/// Black-body viscosity with its quadrature error, kg/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlackbodyViscosity {
    pub viscosity_kg_s: f64,
    pub error_kg_s: f64,
    pub evaluations: usize,
}

/// Imaginary part of the free-space polarizability volume, nm³.
pub fn vacuum_im_polarizability(atom: &Atom, energy_ev: f64, model: BlackbodyModel) -> f64 {
    match model {
        BlackbodyModel::Sharp => atom.bare(energy_ev, atom.numerical_linewidth()).im,
        BlackbodyModel::VacuumDressed => {
            let g = Complex64::new(0.0, 4.0 * PI * vacuum_im_green_local(energy_ev));
            (1.0 / (atom.inverse_bare(energy_ev, 0.0) - g)).im
        }
    }
}

/// Viscosity of an atom moving through black-body radiation,
/// `-(ħ²β/3πc⁵) ∫ dω Im a(ω) ω⁵/sinh²(βħω/2)`.
pub fn mu_blackbody(
    atom: &Atom,
    temperature_k: f64,
    model: BlackbodyModel,
    rel_tol: f64,
) -> Result<BlackbodyViscosity> {
    atom.validate()?;
    if !(temperature_k >= 0.0 && temperature_k.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "temperature must be non-negative, got {temperature_k} K"
        )));
    }
    if temperature_k == 0.0 {
        return Ok(BlackbodyViscosity {
            viscosity_kg_s: 0.0,
            error_kg_s: 0.0,
            evaluations: 0,
        });
    }
    let kt = thermal_energy(temperature_k);
    let wa = atom.resonance_ev;
    let top = (ENERGY_CUTOFF * kt).max(2.0 * wa);
    let mut b = vec![kt, 8.0 * kt, 30.0 * kt, wa];
    for k in 2..=10 {
        let d = 10f64.powi(-k);
        b.push(wa * (1.0 - d));
        b.push(wa * (1.0 + d));
    }
    let axis = Axis::finite(0.0, top).with_breakpoints(b);
    let est = try_integrate(&axis, &Rule::rel(rel_tol).budget(400_000), |e: f64| {
        let x = e / (2.0 * kt);
        let w = if x > 350.0 { 0.0 } else { e.powi(5) / x.sinh().powi(2) };
        Ok::<f64, Error>(vacuum_im_polarizability(atom, e, model) * w)
    })?
    .require_converged()?;
    let kt_j = kt * EV_J;
    let c = -EV_J.powi(6) * 1e-27 / (3.0 * PI * kt_j * HBAR_J_S.powi(4) * C_M_S.powi(5));
    Ok(BlackbodyViscosity {
        viscosity_kg_s: c * est.value,
        error_kg_s: c.abs() * est.error,
        evaluations: est.evaluations,
    })
}

/// Black-body drag force `μ v`, N.
pub fn force_blackbody(
    atom: &Atom,
    velocity_m_s: f64,
    temperature_k: f64,
    model: BlackbodyModel,
    rel_tol: f64,
) -> Result<f64> {
    Ok(mu_blackbody(atom, temperature_k, model, rel_tol)?.viscosity_kg_s * velocity_m_s)
}

fn kernel_double_integral(
    kernel: &PlanarKernel,
    rule: &Rule,
    f: impl Fn(f64, f64, &Moment<f64>, &Moment<f64>) -> f64,
) -> Result<f64> {
    let qmax = kernel.q_max();
    let s = kernel.q_scale();
    let axis = Axis::finite(-qmax, qmax).with_breakpoints([-s, 0.0, s]);
    let est = cubature(&[axis.clone(), axis], rule, |p: &[f64]| {
        let (qt, q) = (p[0], p[1]);
        f(qt, q, &kernel.entries(qt), &kernel.entries(q))
    })?
    .require_converged()?;
    Ok(est.value / (4.0 * PI * PI))
}

/// Low-velocity thermal viscosity from the double wave-number integral
/// `-(π/3)(α₀²/ħβ²) ∫∫ (q - q̃)² Tr[G'_Im(q̃) G'_Im(q)]`.
pub fn mu_general_thermal(
    atom: &Atom,
    material: &Material,
    z_nm: f64,
    temperature_k: f64,
    projection: KernelProjection,
    rule: &Rule,
) -> Result<f64> {
    let kernel = PlanarKernel::new(z_nm)?.with_projection(projection);
    mu_general_thermal_with_kernel(atom, material, &kernel, temperature_k, rule)
}

/// As [`mu_general_thermal`] for a prepared kernel.
pub fn mu_general_thermal_with_kernel(
    atom: &Atom,
    material: &Material,
    kernel: &PlanarKernel,
    temperature_k: f64,
    rule: &Rule,
) -> Result<f64> {
    let slope = material.ohmic_slope()?;
    let x = kernel_double_integral(kernel, rule, |qt, q, kt, k| {
        (q - qt).powi(2) * kt.trace_product(k)
    })?;
    let a = 4.0 * PI * atom.static_volume_nm3;
    let kt = thermal_energy(temperature_k);
    Ok(-(PI / 3.0) * HBAR_J_S * kt * kt * a * a * slope * slope * x * 1e18)
}

/// Quantum-friction viscosity from the double wave-number integral
/// `-(ħ/π) α₀² v² ∫∫ (q + q̃)⁴/12 Tr[G'_Im(q̃)ᵀ G'_Im(q)]`.
pub fn mu_qf_general(
    atom: &Atom,
    material: &Material,
    z_nm: f64,
    velocity_m_s: f64,
    projection: KernelProjection,
    rule: &Rule,
) -> Result<f64> {
    let kernel = PlanarKernel::new(z_nm)?.with_projection(projection);
    mu_qf_general_with_kernel(atom, material, &kernel, velocity_m_s, rule)
}

/// As [`mu_qf_general`] for a prepared kernel.
pub fn mu_qf_general_with_kernel(
    atom: &Atom,
    material: &Material,
    kernel: &PlanarKernel,
    velocity_m_s: f64,
    rule: &Rule,
) -> Result<f64> {
    let slope = material.ohmic_slope()?;
    let y = kernel_double_integral(kernel, rule, |qt, q, kt, k| {
        (q + qt).powi(4) * kt.transpose().trace_product(k)
    })?;
    let a = 4.0 * PI * atom.static_volume_nm3;
    let hv = hbar_v(velocity_m_s);
    Ok(-HBAR_J_S / PI * hv * hv * a * a * slope * slope * y / 12.0 * 1e18)
}

/// Full viscosity with its decomposition and the asymptotic references.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViscosityBreakdown {
    pub distance_nm: f64,
    pub velocity_m_s: f64,
    pub temperature_k: f64,
    pub method: Method,
    /// Surface-induced viscosity, kg/s.
    pub mu: f64,
    pub mu_translational: f64,
    pub mu_rotational: f64,
    /// Numerical black-body viscosity (vacuum-dressed atom).
    pub mu_blackbody: f64,
    /// `mu + mu_blackbody`.
    pub mu_with_blackbody: f64,
    pub mu_quantum_friction: f64,
    pub mu_surface_thermal: f64,
    pub mu_surface_thermal_translational: f64,
    pub mu_surface_thermal_rotational: f64,
    pub mu_blackbody_resonant: f64,
    pub mu_blackbody_low_temperature: f64,
    pub mu_over_quantum_friction: f64,
    pub mu_over_surface_thermal: f64,
    pub regime: Regime,
    pub scales: CriticalScales,
    pub resistivity_ohm_m: f64,
    pub error_kg_s: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub elapsed_s: f64,
    pub resonant: bool,
}

/// `μ = F/v` with the translational/rotational split and asymptotic references.
pub fn viscosity(scn: &Scenario, method: Method, acc: &Accuracy) -> Result<ViscosityBreakdown> {
    if scn.velocity_m_s == 0.0 {
        return Err(Error::InvalidParameter(
            "viscosity needs v != 0; use the asymptotic surface-thermal viscosity for v -> 0"
                .into(),
        ));
    }
    let f = force(scn, method, acc)?;
    let rho = scn.material.resistivity()?;
    let a0 = scn.atom.static_volume_nm3;
    let (z, v, t) = (scn.distance_nm, scn.velocity_m_s, scn.temperature_k);
    let mu_qf = asymptotics::mu_quantum_friction(a0, rho, z, v);
    let mu_th = asymptotics::mu_surface_thermal(a0, rho, z, t);
    let (th_t, th_r) = asymptotics::surface_thermal_split(mu_th);
    let bb = mu_blackbody(&scn.atom, t, BlackbodyModel::VacuumDressed, 1e-8)?.viscosity_kg_s;
    Ok(ViscosityBreakdown {
        distance_nm: z,
        velocity_m_s: v,
        temperature_k: t,
        method,
        mu: f.viscosity_kg_s,
        mu_translational: f.viscosity_translational_kg_s,
        mu_rotational: f.viscosity_rotational_kg_s,
        mu_blackbody: bb,
        mu_with_blackbody: f.viscosity_kg_s + bb,
        mu_quantum_friction: mu_qf,
        mu_surface_thermal: mu_th,
        mu_surface_thermal_translational: th_t,
        mu_surface_thermal_rotational: th_r,
        mu_blackbody_resonant: asymptotics::mu_blackbody_resonant(a0, scn.atom.resonance_ev, t),
        mu_blackbody_low_temperature: asymptotics::mu_blackbody_low_temperature(a0, t),
        mu_over_quantum_friction: f.viscosity_kg_s / mu_qf,
        mu_over_surface_thermal: f.viscosity_kg_s / mu_th,
        regime: asymptotics::classify_regime(a0, scn.atom.resonance_ev, rho, z, v.abs(), t),
        scales: asymptotics::critical_scales(z, v.abs(), t, rho),
        resistivity_ohm_m: rho,
        error_kg_s: f.error_n / v.abs(),
        evaluations: f.evaluations,
        converged: f.converged,
        elapsed_s: f.elapsed_s,
        resonant: f.resonant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc() -> Accuracy {
        Accuracy::default()
    }

    #[test]
    fn no_motion_no_force() {
        let scn = Scenario::reference().with_velocity(0.0);
        for route in [Route::Shifted, Route::Symmetric] {
            let f = force(&scn, Method::new(route, Statistics::Full, Order::Dressed), &acc()).unwrap();
            assert!(f.force_n.abs() < 1e-30, "{route}: {}", f.force_n);
            assert!(f.viscosity_kg_s.is_nan());
        }
    }

    #[test]
    fn force_is_odd_in_velocity() {
        let scn = Scenario::reference().with_velocity(3.0e3);
        let back = scn.clone().with_velocity(-3.0e3);
        let m = Method::default();
        let a = force(&scn, m, &acc()).unwrap();
        let b = force(&back, m, &acc()).unwrap();
        assert!((a.force_n + b.force_n).abs() < 1e-9 * a.force_n.abs());
        assert!(a.force_n < 0.0);
    }

    #[test]
    fn parts_add_to_total() {
        let f = force(&Scenario::reference(), Method::default(), &acc()).unwrap();
        let sum = f.force_translational_n + f.force_rotational_n;
        assert!((sum - f.force_n).abs() <= 1e-14 * f.force_n.abs());
        assert!(f.converged);
    }

    #[test]
    fn local_equilibrium_differs_from_full_statistics() {
        let scn = Scenario::reference();
        let full = force_symmetric(&scn, Statistics::Full, Order::Leading, &acc()).unwrap();
        let lte = force_symmetric(&scn, Statistics::Lte, Order::Leading, &acc()).unwrap();
        let rel = (full.force_n - lte.force_n).abs() / full.force_n.abs();
        assert!(rel > 1e-2, "LTE should miss the Doppler-shifted occupation: {rel}");
        let shifted = force_shifted(&scn, Statistics::Lte, Order::Leading, &acc()).unwrap();
        assert!((shifted.force_n / lte.force_n - 1.0).abs() < 1e-4);
    }

    #[test]
    fn normal_route_refuses_local_equilibrium() {
        let m = Method::new(Route::Normal, Statistics::Lte, Order::Dressed);
        let e = force(&Scenario::reference(), m, &acc()).unwrap_err();
        assert!(matches!(e, Error::Unsupported(_)), "{e}");
    }

    #[test]
    fn scenario_rejects_bad_inputs() {
        assert!(Scenario::reference().with_distance(-1.0).validate().is_err());
        assert!(Scenario::reference().with_temperature(-3.0).validate().is_err());
        assert!(Scenario::reference().with_velocity(1e6).validate().is_err());
        assert!(viscosity(&Scenario::reference().with_velocity(0.0), Method::default(), &acc()).is_err());
    }

    #[test]
    fn route_names_round_trip() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
        }
        assert!("sideways".parse::<Route>().is_err());
    }

    #[test]
    fn blackbody_follows_eighth_power_at_low_temperature() {
        let atom = Atom::reference();
        let a = mu_blackbody(&atom, 10.0, BlackbodyModel::VacuumDressed, 1e-8).unwrap();
        let b = mu_blackbody(&atom, 20.0, BlackbodyModel::VacuumDressed, 1e-8).unwrap();
        let slope = (b.viscosity_kg_s / a.viscosity_kg_s).log2();
        assert!((slope - 8.0).abs() < 1e-3, "{slope}");
        let want = asymptotics::mu_blackbody_low_temperature(atom.static_volume_nm3, 10.0);
        assert!((a.viscosity_kg_s / want - 1.0).abs() < 1e-3);
        assert_eq!(mu_blackbody(&atom, 0.0, BlackbodyModel::Sharp, 1e-8).unwrap().viscosity_kg_s, 0.0);
    }

    #[test]
    fn breakdown_references_are_consistent() {
        let b = viscosity(&Scenario::reference(), Method::default(), &acc()).unwrap();
        assert!((b.mu_over_quantum_friction - b.mu / b.mu_quantum_friction).abs() < 1e-12);
        assert_eq!(b.regime, Regime::QuantumFriction);
        assert!((b.mu_with_blackbody - b.mu - b.mu_blackbody).abs() <= 1e-15 * b.mu.abs());
    }
}
