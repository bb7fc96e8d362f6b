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


//! Independent reimplementations, written with plain composite Simpson
//! sums, checked against the library.

use emvisc::asymptotics::{mu_quantum_friction, mu_surface_thermal};
use emvisc::force::mu_general_thermal;
use emvisc::green::{KernelProjection, PlanarKernel};
use emvisc::material::Material;
use emvisc::polarizability::Atom;
use emvisc::quadrature::Rule;
use emvisc::spectral::{planck_derivative, planck_derivative_peak};
use num_complex::Complex64;
use std::f64::consts::PI;

fn simpson(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `ε₀K(q)` entries `(xx, yy, spin)` from the `k_y` integral of the image dipole field.
fn kernel_by_ky(q: f64, z: f64) -> (f64, f64, f64) {
    // ky = |q| sinh t maps the decaying tail onto a short interval
    let aq = q.abs();
    let g = |t: f64, w: &dyn Fn(f64, f64) -> f64| {
        let ky = aq * t.sinh();
        let k = aq * t.cosh();
        w(ky, k) * (-2.0 * k * z).exp() / (2.0 * PI * k) * aq * t.cosh()
    };
    let top = (60.0 / (2.0 * aq * z)).max(1.0).acosh() + 1.0;
    let xx = simpson(0.0, top, 4000, |t| g(t, &|_, _| q * q));
    let yy = simpson(0.0, top, 4000, |t| g(t, &|ky, _| ky * ky));
    let sp = simpson(0.0, top, 4000, |t| g(t, &|_, k| q * k));
    (xx, yy, sp)
}

#[test]
fn kernel_matches_image_field_integral() {
    for z in [1.0, 5.0, 50.0] {
        let k = PlanarKernel::new(z).unwrap();
        for s in [0.05, 0.5, 1.0, 4.0, 15.0] {
            let q = s * k.q_scale();
            let e = k.entries(q);
            let (xx, yy, sp) = kernel_by_ky(q, z);
            let scale = xx.abs().max(yy.abs()).max(sp.abs());
            assert!((e.xx - xx).abs() < 1e-9 * scale, "xx z={z} s={s}");
            assert!((e.yy - yy).abs() < 1e-9 * scale, "yy z={z} s={s}");
            assert!((e.spin_xz - sp).abs() < 1e-9 * scale, "spin z={z} s={s}");
            assert!((e.zz - (xx + yy)).abs() < 1e-9 * scale);
        }
    }
}

#[test]
fn drude_reflection_from_permittivity() {
    let (wp, g) = (9.0, 0.1);
    let m = Material::Drude { plasma_ev: wp, damping_ev: g };
    for w in [1e-3, 0.05, 1.3, 6.36, 12.0] {
        let eps = Complex64::new(1.0, 0.0) - wp * wp / Complex64::new(w * w, w * g);
        let want = (eps - 1.0) / (eps + 1.0);
        let got = m.fresnel(w).unwrap();
        assert!((got - want).norm() < 1e-12 * want.norm(), "{w}");
    }
}

/// `∫_{-∞}^{∞} dq/2π qⁿ ε₀K(q)` for the five kernel entries.
fn moments(z: f64, n: i32) -> [f64; 5] {
    let k = PlanarKernel::new(z).unwrap();
    let top = 40.0 / z;
    let entry = |q: f64, i: usize| {
        let e = k.entries(q);
        [e.xx, e.yy, e.zz, e.spin_xz, e.spin_zx][i]
    };
    let mut out = [0.0; 5];
    for (i, o) in out.iter_mut().enumerate() {
        *o = simpson(-top, top, 20_000, |q| q.powi(n) * entry(q, i)) / (2.0 * PI);
    }
    out
}

/// `Tr[M_a M_b]` (or `Tr[M_aᵀ M_b]`) split into diagonal and spin sums.
fn trace_parts(a: &[f64; 5], b: &[f64; 5], transpose: bool) -> (f64, f64) {
    let diag = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    // tensor spin entries are +i s (xz) and -i s (zx)
    let spin = if transpose {
        -(a[3] * b[3] + a[4] * b[4])
    } else {
        a[3] * b[4] + a[4] * b[3]
    };
    (diag, spin)
}

#[test]
fn thermal_and_quantum_split_ratios() {
    let z = 5.0;
    let m: Vec<[f64; 5]> = (0..5).map(|n| moments(z, n)).collect();
    // ∫∫ (q - q̃)² Tr[K̃ K] = 2 Tr[M0 M2] - 2 Tr[M1 M1]
    let a = trace_parts(&m[0], &m[2], false);
    let b = trace_parts(&m[1], &m[1], false);
    let (xt, xr) = (2.0 * a.0 - 2.0 * b.0, 2.0 * a.1 - 2.0 * b.1);
    assert!((xr / xt + 0.5).abs() < 1e-6, "{}", xr / xt);
    // ∫∫ (q + q̃)⁴ Tr[K̃ᵀ K] = Σ C(4,k) Tr[M_{4-k}ᵀ M_k]
    let binom = [1.0, 4.0, 6.0, 4.0, 1.0];
    let (mut yt, mut yr) = (0.0, 0.0);
    for k in 0..5 {
        let p = trace_parts(&m[4 - k], &m[k], true);
        yt += binom[k] * p.0;
        yr += binom[k] * p.1;
    }
    assert!((yr / yt + 5.0 / 7.0).abs() < 1e-6, "{}", yr / yt);
    let atom = Atom::reference();
    let gold = Material::gold_like();
    let rho = gold.resistivity().unwrap();
    let ratio_closed = mu_quantum_friction(atom.static_volume_nm3, rho, z, 1.0)
        / mu_surface_thermal(atom.static_volume_nm3, rho, z, 1.0);
    // μ_QF/μ_T = (3/π²)(ħv/k_BT)² Y/(12 X)
    let hv = emvisc::units::hbar_v(1.0);
    let kt = emvisc::units::thermal_energy(1.0);
    let ratio_oracle = 3.0 / (PI * PI) * (hv / kt).powi(2) * (yt + yr) / (12.0 * (xt + xr));
    assert!((ratio_oracle / ratio_closed - 1.0).abs() < 1e-6, "{ratio_oracle} vs {ratio_closed}");
}

#[test]
fn thermal_double_integral_against_closed_form_at_several_distances() {
    let atom = Atom::reference();
    let m = Material::gold_like();
    let rho = m.resistivity().unwrap();
    for z in [1.0, 12.0] {
        let got = mu_general_thermal(&atom, &m, z, 7.0, KernelProjection::Full, &Rule::rel(1e-7)).unwrap();
        let want = mu_surface_thermal(atom.static_volume_nm3, rho, z, 7.0);
        assert!((got / want - 1.0).abs() < 1e-5, "z={z}: {got} vs {want}");
    }
}

#[test]
fn planck_derivative_peak_by_grid_search() {
    let t = 300.0;
    let kt = emvisc::units::thermal_energy(t);
    let (mut best, mut arg) = (0.0, 0.0);
    for i in 1..200_000 {
        let e = i as f64 * 1e-4 * kt;
        let v = planck_derivative(e, t);
        if v > best {
            best = v;
            arg = e;
        }
    }
    assert!((arg / planck_derivative_peak(t) - 1.0).abs() < 1e-4);
}
