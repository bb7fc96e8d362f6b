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


//! Error type shared by the library.

use crate::quadrature::QuadError;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("permittivity has a pole at {energy_ev} eV")]
    Pole { energy_ev: f64 },
    #[error("energy {energy_ev} eV is outside the tabulated range [{min_ev}, {max_ev}] eV")]
    Extrapolation {
        energy_ev: f64,
        min_ev: f64,
        max_ev: f64,
    },
    #[error("material is not Ohmic: fitted low-frequency exponent {exponent}")]
    NonOhmic { exponent: f64 },
    #[error("dressing matrix is singular at {energy_ev} eV")]
    SingularDressing { energy_ev: f64 },
    #[error("material table: {0}")]
    Table(String),
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

pub type Result<T> = std::result::Result<T, Error>;
