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

//! Modified Bessel functions of the second kind, orders 0 and 1.
//!
//! Ascending series below `x = 2`; above, the trapezoidal rule on
//! `K_ν(x) = ∫₀^∞ exp(-x cosh t) cosh(νt) dt`, which converges
//! geometrically in the step size for this analytic integrand.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;
const MAX_STEP: f64 = 0.2;

fn series(x: f64) -> (f64, f64) {
    let t = 0.25 * x * x;
    let ln_half = (0.5 * x).ln();
    // K0
    let mut term = 1.0; // t^k / (k!)^2
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail0 = 0.0;
    // K1
    let mut term1 = 1.0; // t^k / (k! (k+1)!)
    let mut i1 = 1.0;
    let mut tail1 = 1.0 - 2.0 * EULER_GAMMA; // psi(1) + psi(2)
    for k in 1..40 {
        let kf = k as f64;
        term *= t / (kf * kf);
        term1 *= t / (kf * (kf + 1.0));
        harmonic += 1.0 / kf;
        i0 += term;
        i1 += term1;
        tail0 += harmonic * term;
        let psi_sum = 2.0 * harmonic + 1.0 / (kf + 1.0) - 2.0 * EULER_GAMMA;
        tail1 += psi_sum * term1;
        if term < 1e-18 * i0 && term1 < 1e-18 * i1 {
            break;
        }
    }
    let k0 = -(ln_half + EULER_GAMMA) * i0 + tail0;
    let k1 = 1.0 / x + ln_half * 0.5 * x * i1 - 0.25 * x * tail1;
    (k0, k1)
}

/// `(e^x K0(x), e^x K1(x))` for `x > SERIES_LIMIT`.
fn trapezoid_scaled(x: f64) -> (f64, f64) {
    // the integrand narrows like exp(-x t²/2); keep several nodes per width
    let step = MAX_STEP.min(0.6 / x.sqrt());
    let mut s0 = 0.5;
    let mut s1 = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * step;
        let w = (-x * (t.cosh() - 1.0)).exp();
        s0 += w;
        s1 += w * t.cosh();
        if w < 1e-18 * s0 {
            break;
        }
        k += 1;
    }
    (step * s0, step * s1)
}

/// `K0(x)` and `K1(x)` together. Requires `x > 0`.
pub fn bessel_k01(x: f64) -> (f64, f64) {
    if x <= SERIES_LIMIT {
        series(x)
    } else {
        let (a, b) = trapezoid_scaled(x);
        let e = (-x).exp();
        (a * e, b * e)
    }
}

/// Exponentially scaled `(e^x K0(x), e^x K1(x))`.
pub fn bessel_k01_scaled(x: f64) -> (f64, f64) {
    if x <= SERIES_LIMIT {
        let (a, b) = series(x);
        let e = x.exp();
        (a * e, b * e)
    } else {
        trapezoid_scaled(x)
    }
}

pub fn bessel_k0(x: f64) -> f64 {
    bessel_k01(x).0
}

pub fn bessel_k1(x: f64) -> f64 {
    bessel_k01(x).1
}
