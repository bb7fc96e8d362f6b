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


//! Dielectric response of the half-space.
//!
//! Only the quasi-static (p-polarized) reflection coefficient
//! `r(ω) = (ε - 1)/(ε + 1)` enters the near-field kernel. Negative
//! frequencies follow from `ε(-ω) = ε*(ω)`.

use crate::error::{Error, Result};
use crate::units::{EPS0_F_M, HBAR_EV_S};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Bounds of the Ohmicity fit, in eV.
pub const OHMIC_FIT_RANGE: (f64, f64) = (1e-8, 1e-4);
/// Accepted deviation of the fitted exponent from 1.
pub const OHMIC_EXPONENT_TOL: f64 = 0.05;

/// Permittivity models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Material {
    /// `ε = 1 - ωp²/(ω² + iωΓ)`.
    Drude { plasma_ev: f64, damping_ev: f64 },
    /// Frequency-independent permittivity.
    Constant { eps_re: f64, eps_im: f64 },
    /// Interpolated table.
    Tabulated(PermittivityTable),
}

impl Material {
    /// Drude metal with the defaults used throughout the examples (ωp = 9 eV, Γ = 0.1 eV).
    pub fn gold_like() -> Self {
        Material::Drude {
            plasma_ev: 9.0,
            damping_ev: 0.1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Material::Drude {
                plasma_ev,
                damping_ev,
            } => {
                if !(*plasma_ev > 0.0 && plasma_ev.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "plasma energy must be positive, got {plasma_ev}"
                    )));
                }
                if !(*damping_ev > 0.0 && damping_ev.is_finite()) {
                    return Err(Error::InvalidParameter(format!(
                        "damping must be positive, got {damping_ev}"
                    )));
                }
                Ok(())
            }
            Material::Constant { eps_re, eps_im } => {
                if !(eps_re.is_finite() && eps_im.is_finite()) || *eps_im < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "constant permittivity must be finite with Im ε >= 0, got {eps_re} + {eps_im}i"
                    )));
                }
                Ok(())
            }
            Material::Tabulated(_) => Ok(()),
        }
    }

    /// `ε(ω)` for `ħω` in eV.
    pub fn permittivity(&self, energy_ev: f64) -> Result<Complex64> {
        let e = energy_ev.abs();
        let eps = match self {
            Material::Drude {
                plasma_ev,
                damping_ev,
            } => {
                if e == 0.0 {
                    return Err(Error::Pole { energy_ev });
                }
                let d = Complex64::new(e * e, e * damping_ev);
                Complex64::new(1.0, 0.0) - plasma_ev * plasma_ev / d
            }
            Material::Constant { eps_re, eps_im } => Complex64::new(*eps_re, *eps_im),
            Material::Tabulated(t) => t.eval(e)?,
        };
        Ok(if energy_ev < 0.0 { eps.conj() } else { eps })
    }

    /// Quasi-static reflection coefficient `r(ω)`.
    pub fn fresnel(&self, energy_ev: f64) -> Result<Complex64> {
        match self {
            Material::Drude {
                plasma_ev,
                damping_ev,
            } => {
                let wp2 = plasma_ev * plasma_ev;
                let e = energy_ev;
                // pole-free form, r(0) = 1
                let den = Complex64::new(wp2 - 2.0 * e * e, -2.0 * e * damping_ev);
                Ok(wp2 / den)
            }
            _ => {
                let eps = self.permittivity(energy_ev)?;
                let den = eps + 1.0;
                if den.norm() == 0.0 {
                    return Err(Error::Pole { energy_ev });
                }
                Ok((eps - 1.0) / den)
            }
        }
    }

    /// `r(e + d) - r(e - d)`, free of cancellation for Drude media.
    pub fn fresnel_difference(&self, energy_ev: f64, shift_ev: f64) -> Result<Complex64> {
        match self {
            Material::Drude {
                plasma_ev,
                damping_ev,
            } => {
                let wp2 = plasma_ev * plasma_ev;
                let den = |x: f64| Complex64::new(wp2 - 2.0 * x * x, -2.0 * x * damping_ev);
                let (e, d) = (energy_ev, shift_ev);
                let num = Complex64::new(2.0 * e, *damping_ev) * (4.0 * wp2 * d);
                Ok(num / (den(e + d) * den(e - d)))
            }
            _ => Ok(self.fresnel(energy_ev + shift_ev)? - self.fresnel(energy_ev - shift_ev)?),
        }
    }

    /// `Im r(ω)/ħω` in 1/eV; finite at ω = 0 for Ohmic media.
    pub fn im_fresnel_over_energy(&self, energy_ev: f64) -> Result<f64> {
        match self {
            Material::Drude {
                plasma_ev,
                damping_ev,
            } => {
                let wp2 = plasma_ev * plasma_ev;
                let e = energy_ev;
                let re = wp2 - 2.0 * e * e;
                let im = 2.0 * e * damping_ev;
                Ok(2.0 * wp2 * damping_ev / (re * re + im * im))
            }
            _ => {
                if energy_ev == 0.0 {
                    return Err(Error::Pole { energy_ev });
                }
                Ok(self.fresnel(energy_ev)?.im / energy_ev)
            }
        }
    }

    /// Fitted exponent `s` of `Im r ∝ ω^s` over [`OHMIC_FIT_RANGE`].
    pub fn low_frequency_exponent(&self) -> Result<f64> {
        let (lo, hi) = OHMIC_FIT_RANGE;
        let n = 9;
        let mut xs = Vec::with_capacity(n);
        let mut ys = Vec::with_capacity(n);
        for k in 0..n {
            let e = lo * (hi / lo).powf(k as f64 / (n - 1) as f64);
            let im = self.fresnel(e)?.im;
            if !(im > 0.0) {
                return Err(Error::NonOhmic {
                    exponent: f64::NAN,
                });
            }
            xs.push(e.ln());
            ys.push(im.ln());
        }
        let mx = xs.iter().sum::<f64>() / n as f64;
        let my = ys.iter().sum::<f64>() / n as f64;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        Ok(sxy / sxx)
    }

    /// Low-frequency slope `d Im r / d(ħω)` at ω = 0, in 1/eV.
    ///
    /// Fails with [`Error::NonOhmic`] unless the fitted exponent is within
    /// [`OHMIC_EXPONENT_TOL`] of one.
    pub fn ohmic_slope(&self) -> Result<f64> {
        if let Material::Drude {
            plasma_ev,
            damping_ev,
        } = self
        {
            return Ok(2.0 * damping_ev / (plasma_ev * plasma_ev));
        }
        let s = self.low_frequency_exponent()?;
        if (s - 1.0).abs() > OHMIC_EXPONENT_TOL {
            return Err(Error::NonOhmic { exponent: s });
        }
        self.im_fresnel_over_energy(OHMIC_FIT_RANGE.0)
    }

    /// Static resistivity `ρ` in Ω·m, from `Im r ≈ 2ε₀ρω`.
    pub fn resistivity(&self) -> Result<f64> {
        Ok(HBAR_EV_S * self.ohmic_slope()? / (2.0 * EPS0_F_M))
    }

    /// Surface plasmon energy `ωp/√2` for Drude media.
    pub fn surface_plasmon_energy(&self) -> Option<f64> {
        match self {
            Material::Drude { plasma_ev, .. } => Some(plasma_ev / std::f64::consts::SQRT_2),
            _ => None,
        }
    }
}

/// Tabulated permittivity with monotone piecewise-cubic (PCHIP) interpolation
/// of the real and imaginary parts. Queries outside the table are errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableRows", into = "TableRows")]
pub struct PermittivityTable {
    energy_ev: Vec<f64>,
    eps_re: Vec<f64>,
    eps_im: Vec<f64>,
    slope_re: Vec<f64>,
    slope_im: Vec<f64>,
}

/// Serialized form of a table: either inline columns or a CSV path.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableRows {
    Path { path: String },
    Columns {
        energy_ev: Vec<f64>,
        eps_re: Vec<f64>,
        eps_im: Vec<f64>,
    },
}

impl TryFrom<TableRows> for PermittivityTable {
    type Error = Error;
    fn try_from(rows: TableRows) -> Result<Self> {
        match rows {
            TableRows::Path { path } => Self::from_csv(Path::new(&path)),
            TableRows::Columns {
                energy_ev,
                eps_re,
                eps_im,
            } => Self::new(energy_ev, eps_re, eps_im),
        }
    }
}

impl From<PermittivityTable> for TableRows {
    fn from(t: PermittivityTable) -> Self {
        TableRows::Columns {
            energy_ev: t.energy_ev,
            eps_re: t.eps_re,
            eps_im: t.eps_im,
        }
    }
}

impl PermittivityTable {
    pub fn new(energy_ev: Vec<f64>, eps_re: Vec<f64>, eps_im: Vec<f64>) -> Result<Self> {
        let n = energy_ev.len();
        if n < 2 || eps_re.len() != n || eps_im.len() != n {
            return Err(Error::Table(format!(
                "need at least two rows of equal length, got {n}/{}/{}",
                eps_re.len(),
                eps_im.len()
            )));
        }
        for w in energy_ev.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Table(format!(
                    "energies must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        if energy_ev[0] <= 0.0 {
            return Err(Error::Table("energies must be positive".into()));
        }
        if energy_ev
            .iter()
            .chain(&eps_re)
            .chain(&eps_im)
            .any(|v| !v.is_finite())
        {
            return Err(Error::Table("non-finite entry".into()));
        }
        let slope_re = pchip_slopes(&energy_ev, &eps_re);
        let slope_im = pchip_slopes(&energy_ev, &eps_im);
        Ok(Self {
            energy_ev,
            eps_re,
            eps_im,
            slope_re,
            slope_im,
        })
    }

    /// Reads a CSV with a header row and columns `(ω [eV], Re ε, Im ε)`.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::Table(format!("{}: {e}", path.display())))?;
        let (mut w, mut re, mut im) = (Vec::new(), Vec::new(), Vec::new());
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Table(e.to_string()))?;
            if rec.len() != 3 {
                return Err(Error::Table(format!(
                    "row {} has {} columns, expected 3",
                    line + 2,
                    rec.len()
                )));
            }
            let parse = |i: usize| -> Result<f64> {
                rec[i].parse::<f64>().map_err(|e| {
                    Error::Table(format!("row {} column {}: {e}", line + 2, i + 1))
                })
            };
            w.push(parse(0)?);
            re.push(parse(1)?);
            im.push(parse(2)?);
        }
        Self::new(w, re, im)
    }

    pub fn range(&self) -> (f64, f64) {
        (self.energy_ev[0], *self.energy_ev.last().unwrap())
    }

    fn eval(&self, e: f64) -> Result<Complex64> {
        let (lo, hi) = self.range();
        if !(e >= lo && e <= hi) {
            return Err(Error::Extrapolation {
                energy_ev: e,
                min_ev: lo,
                max_ev: hi,
            });
        }
        let k = match self.energy_ev.partition_point(|&x| x <= e) {
            0 => 0,
            p => (p - 1).min(self.energy_ev.len() - 2),
        };
        Ok(Complex64::new(
            hermite(&self.energy_ev, &self.eps_re, &self.slope_re, k, e),
            hermite(&self.energy_ev, &self.eps_im, &self.slope_im, k, e),
        ))
    }
}

fn hermite(x: &[f64], y: &[f64], d: &[f64], k: usize, t: f64) -> f64 {
    let h = x[k + 1] - x[k];
    let s = (t - x[k]) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    h00 * y[k] + h10 * h * d[k] + h01 * y[k + 1] + h11 * h * d[k + 1]
}

/// Fritsch–Carlson derivative estimates with shape-preserving end conditions.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    let mut d = vec![0.0; n];
    if n == 2 {
        d[0] = delta[0];
        d[1] = delta[0];
        return d;
    }
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    let end = |h0: f64, h1: f64, m0: f64, m1: f64| {
        let mut s = ((2.0 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if s.signum() != m0.signum() {
            s = 0.0;
        } else if m0.signum() != m1.signum() && s.abs() > 3.0 * m0.abs() {
            s = 3.0 * m0;
        }
        s
    };
    d[0] = end(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drude_permittivity_reference() {
        // 1 - 81/(1 + 0.1i) evaluated by hand
        let m = Material::gold_like();
        let eps = m.permittivity(1.0).unwrap();
        let want = Complex64::new(1.0, 0.0) - 81.0 / Complex64::new(1.0, 0.1);
        assert!((eps - want).norm() < 1e-12);
        let r = m.fresnel(1.0).unwrap();
        assert!((r - (want - 1.0) / (want + 1.0)).norm() < 1e-14);
    }

    #[test]
    fn drude_pole_at_zero() {
        let m = Material::gold_like();
        assert!(matches!(m.permittivity(0.0), Err(Error::Pole { .. })));
        assert_eq!(m.fresnel(0.0).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn fresnel_difference_matches_subtraction() {
        let m = Material::gold_like();
        for (e, d) in [(0.3, 0.1), (1e-4, 2e-3), (-0.5, 0.25), (6.0, 0.4)] {
            let got = m.fresnel_difference(e, d).unwrap();
            let want = m.fresnel(e + d).unwrap() - m.fresnel(e - d).unwrap();
            // the subtraction itself loses digits to cancellation
            assert!((got - want).norm() < 1e-10 * want.norm(), "{e} {d}");
        }
        // tiny shifts keep full relative accuracy
        let d = 1e-12;
        let got = m.fresnel_difference(0.2, d).unwrap();
        let h = 1e-6;
        let slope = (m.fresnel(0.2 + h).unwrap() - m.fresnel(0.2 - h).unwrap()) / (2.0 * h);
        assert!((got / (2.0 * d) - slope).norm() < 1e-6 * slope.norm());
    }

    #[test]
    fn crossing_relation() {
        let m = Material::gold_like();
        for e in [1e-3, 0.7, 6.3, 20.0] {
            let a = m.fresnel(-e).unwrap();
            let b = m.fresnel(e).unwrap().conj();
            assert!((a - b).norm() < 1e-15 * b.norm());
        }
    }

    #[test]
    fn drude_resistivity_and_length() {
        let m = Material::gold_like();
        let rho = m.resistivity().unwrap();
        assert!((rho / 9.18e-8 - 1.0).abs() < 2e-3, "rho = {rho}");
        let lam = crate::units::resistivity_length(rho);
        assert!((lam - 3.06).abs() < 0.01, "lambda_rho = {lam}");
        let s = m.low_frequency_exponent().unwrap();
        assert!((s - 1.0).abs() < 1e-6);
    }

    #[test]
    fn constant_complex_is_not_ohmic() {
        let m = Material::Constant {
            eps_re: -10.0,
            eps_im: 1.0,
        };
        match m.resistivity() {
            Err(Error::NonOhmic { exponent }) => assert!(exponent.abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
        let lossless = Material::Constant {
            eps_re: 4.0,
            eps_im: 0.0,
        };
        assert!(matches!(lossless.resistivity(), Err(Error::NonOhmic { .. })));
    }

    #[test]
    fn table_reproduces_nodes_and_refuses_extrapolation() {
        let w = vec![0.5, 1.0, 2.0, 4.0];
        let re = vec![-300.0, -80.0, -19.0, -4.0];
        let im = vec![60.0, 8.0, 1.0, 0.2];
        let t = Material::Tabulated(PermittivityTable::new(w.clone(), re.clone(), im.clone()).unwrap());
        for i in 0..4 {
            let e = t.permittivity(w[i]).unwrap();
            assert!((e.re - re[i]).abs() < 1e-12 && (e.im - im[i]).abs() < 1e-12);
        }
        assert!(matches!(t.permittivity(4.5), Err(Error::Extrapolation { .. })));
        assert!(matches!(t.permittivity(0.1), Err(Error::Extrapolation { .. })));
        // monotone data stays monotone between nodes
        let mut prev = f64::NEG_INFINITY;
        for k in 0..200 {
            let e = 0.5 + 3.5 * k as f64 / 199.0;
            let v = t.permittivity(e).unwrap().re;
            assert!(v >= prev - 1e-12);
            prev = v;
        }
    }

    #[test]
    fn table_rejects_unsorted() {
        assert!(PermittivityTable::new(vec![1.0, 0.5], vec![1.0, 1.0], vec![0.0, 0.0]).is_err());
    }
}
