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


//! Doppler-shifted kernel moments.
//!
//! At a (possibly negative) energy `E` and Doppler shift `E_q = E + q ħv`
//! the force routes need
//!
//! ```text
//! dressing  ∫ dq/2π r(E_q) ε₀K(q)
//! m_k       ∫ dq/2π q^k Im r(E_q) ε₀K(q)
//! n_k       ∫ dq/2π q^k n(E_q) Im r(E_q) ε₀K(q)      k = 0, 1
//! ```
//!
//! All of them come out of one vector-valued quadrature over `q ≥ 0`,
//! folding `±q` so that the even diagonal and odd spin entries combine
//! without cancellation.

use crate::error::Result;
use crate::green::{Moment, PlanarKernel};
use crate::material::Material;
use crate::quadrature::{integrate, Axis, Rule};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `E·n(E)` for the Bose–Einstein occupation at thermal energy `kt` (eV).
///
/// Smooth through `E = 0`; at `kt = 0` it is `max(-E, 0)`.
pub fn energy_times_bose(energy_ev: f64, kt: f64) -> f64 {
    if kt <= 0.0 {
        return (-energy_ev).max(0.0);
    }
    let x = energy_ev / kt;
    if x == 0.0 {
        return kt;
    }
    let d = x.exp_m1();
    if d.is_infinite() {
        return 0.0;
    }
    energy_ev / d
}

/// Bose–Einstein occupation `n(E) = 1/(e^{E/kT} - 1)`, with `n = -θ(-E)` at `kt = 0`.
pub fn bose(energy_ev: f64, kt: f64) -> f64 {
    if kt <= 0.0 {
        return if energy_ev < 0.0 { -1.0 } else { 0.0 };
    }
    1.0 / (energy_ev / kt).exp_m1()
}

/// `n(E) Im r(E)`, evaluated jointly so it stays finite at `E = 0`.
pub fn bose_im_fresnel(material: &Material, energy_ev: f64, kt: f64) -> Result<f64> {
    Ok(energy_times_bose(energy_ev, kt) * material.im_fresnel_over_energy(energy_ev)?)
}

/// The moments listed in the module documentation.
#[derive(Debug, Clone, Copy)]
pub struct ShiftedMoments {
    pub dressing: Moment<Complex64>,
    pub m0: Moment<f64>,
    pub m1: Moment<f64>,
    pub n0: Moment<f64>,
    pub n1: Moment<f64>,
    pub evaluations: usize,
}

/// Everything the moment integrals depend on apart from the energy.
#[derive(Debug, Clone, Copy)]
pub struct DopplerContext<'a> {
    pub kernel: PlanarKernel,
    pub material: &'a Material,
    /// `ħv` in eV·nm.
    pub hbar_v: f64,
    /// `k_B T` in eV.
    pub kt: f64,
    pub rule: Rule,
}

impl<'a> DopplerContext<'a> {
    /// Breakpoints on the folded axis `q ≥ 0` at energy `e`.
    pub fn breakpoints(&self, e: f64) -> Vec<f64> {
        let mut b = vec![self.kernel.q_scale()];
        if self.hbar_v != 0.0 {
            let qv = |x: f64| x / self.hbar_v.abs();
            b.push(qv(e.abs()));
            if self.kt > 0.0 {
                for s in [-4.0, 4.0] {
                    b.push(qv(e.abs() + s * self.kt));
                }
            }
            if let Some(sp) = self.material.surface_plasmon_energy() {
                b.push(qv(sp - e.abs()));
                b.push(qv(sp + e.abs()));
            }
        }
        let qmax = self.kernel.q_max();
        b.retain(|&x| x > 0.0 && x < qmax);
        b
    }

    /// All moments at energy `e`.
    pub fn moments(&self, e: f64) -> Result<ShiftedMoments> {
        let axis = Axis::finite(0.0, self.kernel.q_max()).with_breakpoints(self.breakpoints(e));
        let mut failure = None;
        let est = integrate(&axis, &self.rule, |q: f64| {
            match self.integrand(e, q) {
                Ok(v) => v,
                Err(err) => {
                    failure.get_or_insert(err);
                    [0.0; 30]
                }
            }
        })?
        .require_converged()?;
        if let Some(err) = failure {
            return Err(err);
        }
        let v = est.value;
        Ok(ShiftedMoments {
            dressing: Moment::<Complex64>::from_slice(&v[0..10]),
            m0: Moment::<f64>::from_slice(&v[10..15]),
            m1: Moment::<f64>::from_slice(&v[15..20]),
            n0: Moment::<f64>::from_slice(&v[20..25]),
            n1: Moment::<f64>::from_slice(&v[25..30]),
            evaluations: est.evaluations,
        })
    }

    fn integrand(&self, e: f64, q: f64) -> Result<[f64; 30]> {
        let k = self.kernel.entries(q);
        let d = q * self.hbar_v;
        let (ep, em) = (e + d, e - d);
        let m = self.material;
        let (rp, rm) = (m.fresnel(ep)?, m.fresnel(em)?);
        let r_odd = m.fresnel_difference(e, d)?;
        let (np, nm) = (bose_im_fresnel(m, ep, self.kt)?, bose_im_fresnel(m, em, self.kt)?);
        let c = 1.0 / (2.0 * PI);
        let mut out = [0.0; 30];
        let re = (rp + rm) * c;
        let ro = r_odd * c;
        let cplx = [re * k.xx, re * k.yy, re * k.zz, ro * k.spin_xz, ro * k.spin_zx];
        for (i, z) in cplx.iter().enumerate() {
            out[2 * i] = z.re;
            out[2 * i + 1] = z.im;
        }
        // f(q) + f(-q) weights the diagonal, f(q) - f(-q) the spin entries
        let mut put = |slot: usize, even: f64, odd: f64| {
            let (even, odd) = (even * c, odd * c);
            out[slot] = even * k.xx;
            out[slot + 1] = even * k.yy;
            out[slot + 2] = even * k.zz;
            out[slot + 3] = odd * k.spin_xz;
            out[slot + 4] = odd * k.spin_zx;
        };
        put(10, rp.im + rm.im, r_odd.im);
        put(15, q * r_odd.im, q * (rp.im + rm.im));
        put(20, np + nm, np - nm);
        put(25, q * (np - nm), q * (np + nm));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_times_bose_limits() {
        assert_eq!(energy_times_bose(0.0, 0.02), 0.02);
        assert!((energy_times_bose(1e-12, 0.02) - 0.02).abs() < 1e-12);
        assert!((energy_times_bose(-1.0, 0.02) - 1.0).abs() < 1e-15);
        assert_eq!(energy_times_bose(50.0, 0.02), 0.0);
        assert_eq!(energy_times_bose(-0.3, 0.0), 0.3);
        assert_eq!(energy_times_bose(0.3, 0.0), 0.0);
    }

    #[test]
    fn bose_reflection() {
        // n(-E) = -1 - n(E)
        for e in [1e-4, 0.01, 0.3] {
            let kt = 0.025;
            assert!((bose(-e, kt) + 1.0 + bose(e, kt)).abs() < 1e-10 * bose(e, kt).abs().max(1.0));
        }
    }

    #[test]
    fn static_moments_match_sum_rule() {
        let m = Material::gold_like();
        let ctx = DopplerContext {
            kernel: PlanarKernel::new(5.0).unwrap(),
            material: &m,
            hbar_v: 0.0,
            kt: 0.0,
            rule: Rule::rel(1e-10),
        };
        let e = 0.7;
        let mom = ctx.moments(e).unwrap();
        let r = m.fresnel(e).unwrap();
        let want = ctx.kernel.sum_rule().scale(r);
        assert!(mom.dressing.to_tensor().max_diff(&want) < 1e-9 * want.max_abs());
        let im = ctx.kernel.sum_rule().scale_re(r.im);
        assert!(mom.m0.to_tensor().max_diff(&im) < 1e-9 * im.max_abs());
        // odd moment of an even weight vanishes
        assert!(mom.m1.xx.abs() < 1e-20);
    }
}
