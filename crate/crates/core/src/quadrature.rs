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

//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Integrands may be scalar, complex or fixed-size vectors. Error control is
//! per component, so small components of a packed integrand are resolved to
//! the same relative accuracy as large ones.

use num_complex::Complex64;
use thiserror::Error;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Values that can be integrated: a fixed number of real components.
pub trait QuadValue: Copy {
    /// Number of real components.
    const DIM: usize;
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    fn component(&self, i: usize) -> f64;
}

impl QuadValue for f64 {
    const DIM: usize = 1;
    fn zero() -> Self {
        0.0
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn component(&self, _i: usize) -> f64 {
        *self
    }
}

impl QuadValue for Complex64 {
    const DIM: usize = 2;
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn component(&self, i: usize) -> f64 {
        if i == 0 {
            self.re
        } else {
            self.im
        }
    }
}

impl<const N: usize> QuadValue for [f64; N] {
    const DIM: usize = N;
    fn zero() -> Self {
        [0.0; N]
    }
    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b;
        }
        self
    }
    fn scale(mut self, s: f64) -> Self {
        for a in self.iter_mut() {
            *a *= s;
        }
        self
    }
    fn component(&self, i: usize) -> f64 {
        self[i]
    }
}

/// Quadrature failures.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    #[error("integrand is not finite at x = {at}")]
    NonFinite { at: f64 },
    #[error("evaluation budget of {evaluations} exhausted (estimated error {error:e})")]
    BudgetExceeded {
        partial: Vec<f64>,
        error: f64,
        evaluations: usize,
    },
    #[error("invalid integration domain: {0}")]
    Domain(String),
}

/// Integration range along one axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite(f64, f64),
    /// `[a, ∞)`, mapped through `x = a + t/(1 - t)`.
    SemiInfinite(f64),
}

/// One integration axis with optional interior breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub domain: Domain,
    pub breakpoints: Vec<f64>,
}

impl Axis {
    pub fn finite(a: f64, b: f64) -> Self {
        Self {
            domain: Domain::Finite(a, b),
            breakpoints: Vec::new(),
        }
    }

    pub fn semi_infinite(a: f64) -> Self {
        Self {
            domain: Domain::SemiInfinite(a),
            breakpoints: Vec::new(),
        }
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }
}

/// Tolerances and evaluation budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rule {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evaluations: usize,
}

impl Default for Rule {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_evaluations: 200_000,
        }
    }
}

impl Rule {
    pub fn rel(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn budget(mut self, max_evaluations: usize) -> Self {
        self.max_evaluations = max_evaluations;
        self
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<V> {
    pub value: V,
    /// Largest per-component error estimate.
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<V: QuadValue> Estimate<V> {
    /// Turns a non-converged estimate into a budget error carrying the partial value.
    pub fn require_converged(self) -> Result<Self, QuadError> {
        if self.converged {
            Ok(self)
        } else {
            Err(QuadError::BudgetExceeded {
                partial: (0..V::DIM).map(|i| self.value.component(i)).collect(),
                error: self.error,
                evaluations: self.evaluations,
            })
        }
    }
}

struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    err: Vec<f64>,
    abs: Vec<f64>,
}

fn gk15<V, E, F>(f: &mut F, a: f64, b: f64) -> Result<Segment<V>, E>
where
    V: QuadValue,
    E: From<QuadError>,
    F: FnMut(f64) -> Result<V, E>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv: [Option<V>; 15] = [None; 15];
    let mut eval = |x: f64| -> Result<V, E> {
        let v = f(x)?;
        for i in 0..V::DIM {
            if !v.component(i).is_finite() {
                return Err(QuadError::NonFinite { at: x }.into());
            }
        }
        Ok(v)
    };
    fv[7] = Some(eval(c)?);
    for k in 0..7 {
        fv[k] = Some(eval(c - h * XGK[k])?);
        fv[14 - k] = Some(eval(c + h * XGK[k])?);
    }
    let fv: Vec<V> = fv.into_iter().map(|v| v.unwrap()).collect();
    let mut kron = fv[7].scale(WGK[7]);
    let mut gauss = fv[7].scale(WG[3]);
    for k in 0..7 {
        let pair = fv[k].add(fv[14 - k]);
        kron = kron.add(pair.scale(WGK[k]));
        if k % 2 == 1 {
            gauss = gauss.add(pair.scale(WG[k / 2]));
        }
    }
    let mut err = vec![0.0; V::DIM];
    let mut abs = vec![0.0; V::DIM];
    for i in 0..V::DIM {
        let ki = kron.component(i);
        let mean = 0.5 * ki;
        let mut resabs = WGK[7] * fv[7].component(i).abs();
        let mut resasc = WGK[7] * (fv[7].component(i) - mean).abs();
        for k in 0..7 {
            let (l, r) = (fv[k].component(i), fv[14 - k].component(i));
            resabs += WGK[k] * (l.abs() + r.abs());
            resasc += WGK[k] * ((l - mean).abs() + (r - mean).abs());
        }
        let resabs = resabs * h.abs();
        let resasc = resasc * h.abs();
        let mut e = ((ki - gauss.component(i)) * h).abs();
        if resasc != 0.0 && e != 0.0 {
            e = resasc * (200.0 * e / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            e = e.max(50.0 * f64::EPSILON * resabs);
        }
        err[i] = e;
        abs[i] = resabs;
    }
    Ok(Segment {
        a,
        b,
        value: kron.scale(h),
        err,
        abs,
    })
}

fn adaptive<V, E, F>(
    mut f: F,
    edges: &[f64],
    rule: &Rule,
) -> Result<Estimate<V>, E>
where
    V: QuadValue,
    E: From<QuadError>,
    F: FnMut(f64) -> Result<V, E>,
{
    let mut segs = Vec::with_capacity(64);
    for w in edges.windows(2) {
        segs.push(gk15(&mut f, w[0], w[1])?);
    }
    let mut evaluations = 15 * segs.len();
    let dim = V::DIM;
    let mut tol = vec![0.0; dim];
    loop {
        let mut total = V::zero();
        let mut err = vec![0.0; dim];
        let mut abs = vec![0.0; dim];
        for s in &segs {
            total = total.add(s.value);
            for i in 0..dim {
                err[i] += s.err[i];
                abs[i] += s.abs[i];
            }
        }
        let mut converged = true;
        for i in 0..dim {
            tol[i] = rule
                .abs_tol
                .max(rule.rel_tol * total.component(i).abs())
                .max(1e-3 * rule.rel_tol * abs[i])
                .max(f64::MIN_POSITIVE);
            if err[i] > tol[i] {
                converged = false;
            }
        }
        let max_err = err.iter().cloned().fold(0.0, f64::max);
        if converged || evaluations + 30 > rule.max_evaluations {
            return Ok(Estimate {
                value: total,
                error: max_err,
                evaluations,
                converged,
            });
        }
        let mut worst = 0;
        let mut worst_score = -1.0;
        for (k, s) in segs.iter().enumerate() {
            let score = (0..dim)
                .map(|i| s.err[i] / tol[i])
                .fold(0.0, f64::max);
            if score > worst_score {
                worst_score = score;
                worst = k;
            }
        }
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if !(mid > s.a.min(s.b) && mid < s.a.max(s.b)) {
            // interval can no longer be split in floating point
            return Ok(Estimate {
                value: total,
                error: max_err,
                evaluations,
                converged: false,
            });
        }
        segs.push(gk15(&mut f, s.a, mid)?);
        segs.push(gk15(&mut f, mid, s.b)?);
        evaluations += 30;
    }
}

fn edges(lo: f64, hi: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut e = vec![lo];
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .cloned()
        .filter(|&p| p.is_finite() && p > lo && p < hi)
        .collect();
    inner.sort_by(|a, b| a.partial_cmp(b).unwrap());
    inner.dedup();
    e.extend(inner);
    e.push(hi);
    e
}

/// Integrates a fallible integrand over one axis.
pub fn try_integrate<V, E, F>(axis: &Axis, rule: &Rule, mut f: F) -> Result<Estimate<V>, E>
where
    V: QuadValue,
    E: From<QuadError>,
    F: FnMut(f64) -> Result<V, E>,
{
    match axis.domain {
        Domain::Finite(a, b) => {
            if !(a.is_finite() && b.is_finite()) {
                return Err(QuadError::Domain(format!("[{a}, {b}]")).into());
            }
            if a == b {
                return Ok(Estimate {
                    value: V::zero(),
                    error: 0.0,
                    evaluations: 0,
                    converged: true,
                });
            }
            let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
            let mut est = adaptive(f, &edges(lo, hi, &axis.breakpoints), rule)?;
            est.value = est.value.scale(sign);
            Ok(est)
        }
        Domain::SemiInfinite(a) => {
            if !a.is_finite() {
                return Err(QuadError::Domain(format!("[{a}, inf)")).into());
            }
            let tb: Vec<f64> = axis
                .breakpoints
                .iter()
                .filter(|&&p| p > a)
                .map(|&p| (p - a) / (1.0 + p - a))
                .collect();
            let g = |t: f64| -> Result<V, E> {
                let u = 1.0 - t;
                let x = a + t / u;
                Ok(f(x)?.scale(1.0 / (u * u)))
            };
            adaptive(g, &edges(0.0, 1.0, &tb), rule)
        }
    }
}

/// Integrates an infallible integrand over one axis.
pub fn integrate<V, F>(axis: &Axis, rule: &Rule, mut f: F) -> Result<Estimate<V>, QuadError>
where
    V: QuadValue,
    F: FnMut(f64) -> V,
{
    try_integrate(axis, rule, |x| Ok::<V, QuadError>(f(x)))
}

/// Nested integration over up to three axes; the first axis is outermost.
///
/// Inner integrals use `rule` with the budget applied per inner call; the
/// returned error and convergence flag refer to the outermost level.
pub fn cubature<V, F>(axes: &[Axis], rule: &Rule, f: F) -> Result<Estimate<V>, QuadError>
where
    V: QuadValue,
    F: Fn(&[f64]) -> V,
{
    if axes.is_empty() || axes.len() > 3 {
        return Err(QuadError::Domain(format!("{} axes", axes.len())));
    }
    let mut point = [0.0; 3];
    nested(axes, rule, &f, &mut point, 0)
}

fn nested<V, F>(
    axes: &[Axis],
    rule: &Rule,
    f: &F,
    point: &mut [f64; 3],
    level: usize,
) -> Result<Estimate<V>, QuadError>
where
    V: QuadValue,
    F: Fn(&[f64]) -> V,
{
    let n = axes.len();
    if level + 1 == n {
        let mut p = *point;
        return integrate(&axes[level], rule, |x| {
            p[level] = x;
            f(&p[..n])
        });
    }
    let mut p = *point;
    try_integrate(&axes[level], rule, |x| {
        p[level] = x;
        nested(axes, rule, f, &mut p, level + 1).map(|e| e.value)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let est = integrate(&Axis::finite(0.0, 2.0), &Rule::default(), |x: f64| {
            x.powi(20) - 3.0 * x.powi(7)
        })
        .unwrap();
        let exact = 2f64.powi(21) / 21.0 - 3.0 * 2f64.powi(8) / 8.0;
        assert!((est.value / exact - 1.0).abs() < 1e-13);
        assert!(est.converged);
    }

    #[test]
    fn semi_infinite_gamma() {
        let est = integrate(&Axis::semi_infinite(0.0), &Rule::rel(1e-12), |x: f64| {
            x.powi(3) * (-x).exp()
        })
        .unwrap();
        assert!((est.value - 6.0).abs() < 1e-10);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let f = |x: f64| x.sin();
        let a = integrate(&Axis::finite(0.0, 1.0), &Rule::default(), f).unwrap();
        let b = integrate(&Axis::finite(1.0, 0.0), &Rule::default(), f).unwrap();
        assert_eq!(a.value, -b.value);
    }

    #[test]
    fn breakpoint_at_kink() {
        let axis = Axis::finite(-1.0, 2.0).with_breakpoints([0.3]);
        let est = integrate(&axis, &Rule::rel(1e-13), |x: f64| (x - 0.3).abs()).unwrap();
        let exact = 0.5 * 1.3 * 1.3 + 0.5 * 1.7 * 1.7;
        assert!((est.value - exact).abs() < 1e-13);
        assert_eq!(est.evaluations, 30);
    }

    #[test]
    fn nan_is_reported() {
        let r = integrate(&Axis::finite(0.0, 1.0), &Rule::default(), |x: f64| {
            if x > 0.5 {
                f64::NAN
            } else {
                x
            }
        });
        assert!(matches!(r, Err(QuadError::NonFinite { .. })));
    }

    #[test]
    fn budget_exhaustion_keeps_partial() {
        let est = integrate(&Axis::finite(0.0, 1.0), &Rule::rel(1e-15).budget(60), |x: f64| {
            (1.0 / (x + 1e-9)).sin()
        })
        .unwrap();
        assert!(!est.converged);
        match est.require_converged() {
            Err(QuadError::BudgetExceeded { partial, .. }) => assert_eq!(partial.len(), 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_components_are_resolved() {
        // second component is 1e-12 times the first but still gets full relative accuracy
        let est = integrate(&Axis::finite(0.0, 1.0), &Rule::rel(1e-10), |x: f64| {
            [1.0 + x, 1e-12 * (30.0 * x).cos()]
        })
        .unwrap();
        let exact = 1e-12 * 30f64.sin() / 30.0;
        assert!((est.value[1] / exact - 1.0).abs() < 1e-9);
    }

    #[test]
    fn cubature_product() {
        let axes = [Axis::finite(0.0, 1.0), Axis::semi_infinite(0.0), Axis::finite(0.0, 2.0)];
        let est = cubature(&axes, &Rule::rel(1e-10), |p: &[f64]| p[0] * (-p[1]).exp() * p[2]).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9);
    }
}
