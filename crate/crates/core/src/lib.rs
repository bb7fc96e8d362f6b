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


//! Electromagnetic drag on a polarizable atom moving parallel to a planar,
//! Ohmic surface: quantum friction, surface-thermal friction and
//! black-body friction, with their closed-form asymptotics.

pub mod asymptotics;
pub mod doppler;
pub mod error;
pub mod force;
pub mod green;
pub mod material;
pub mod polarizability;
pub mod quadrature;
pub mod spectra;
pub mod spectral;
pub mod special;
pub mod sweep;
pub mod tensor;
pub mod units;
pub mod validate;

pub use error::{Error, Result};
