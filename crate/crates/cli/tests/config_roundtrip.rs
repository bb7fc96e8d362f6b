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


//! parse -> serialize -> parse is the identity on run configurations.

use emvisc::force::Route;
use emvisc::material::Material;
use emvisc::polarizability::Atom;
use emvisc::spectra::{Order, Statistics};
use emvisc_cli::config::{
    AxisSpec, ComputationConfig, Format, MaterialConfig, OutputConfig, Preset, RegimeMapConfig,
    ScenarioConfig, Spacing, SpectralConfig, VelocityKeyword, VelocitySpec,
};
use emvisc_cli::RunConfig;
use proptest::prelude::*;

fn axis() -> impl Strategy<Value = AxisSpec> {
    prop_oneof![
        (0.1f64..1e4).prop_map(AxisSpec::Value),
        (0.1f64..10.0, 10.0f64..1e4, 1usize..200, any::<bool>()).prop_map(|(start, stop, points, lin)| {
            AxisSpec::Range {
                start,
                stop,
                points,
                spacing: if lin { Spacing::Linear } else { Spacing::Log },
            }
        }),
    ]
}

fn material() -> impl Strategy<Value = Option<MaterialConfig>> {
    prop_oneof![
        Just(None),
        Just(Some(MaterialConfig::Preset(Preset::Gold))),
        (0.5f64..20.0, 1e-3f64..1.0).prop_map(|(plasma_ev, damping_ev)| {
            Some(MaterialConfig::Model(Material::Drude { plasma_ev, damping_ev }))
        }),
        (-10.0f64..10.0, 0.0f64..10.0)
            .prop_map(|(eps_re, eps_im)| Some(MaterialConfig::Model(Material::Constant { eps_re, eps_im }))),
    ]
}

fn config() -> impl Strategy<Value = RunConfig> {
    let scenario = (
        material(),
        (1e-3f64..1.0, 0.1f64..20.0),
        axis(),
        prop_oneof![axis().prop_map(VelocitySpec::Axis), Just(VelocitySpec::Keyword(VelocityKeyword::Critical))],
        axis(),
    )
        .prop_map(|(material, (a0, wa), distance_nm, velocity_m_s, temperature_k)| ScenarioConfig {
            material,
            atom: Atom {
                static_volume_nm3: a0,
                resonance_ev: wa,
            },
            distance_nm,
            velocity_m_s,
            temperature_k,
        });
    let computation = (0usize..3, any::<bool>(), any::<bool>(), 1e-10f64..1e-2, 0usize..64).prop_map(
        |(r, lte, leading, rel_tol, workers)| ComputationConfig {
            route: Route::ALL[r],
            mode: if lte { Statistics::Lte } else { Statistics::Full },
            order: if leading { Order::Leading } else { Order::Dressed },
            rel_tol,
            workers,
        },
    );
    let rest = (
        (1e-5f64..1.0, 1.0f64..100.0, 1usize..200),
        (0.5f64..100.0, 0.1f64..1000.0),
        (proptest::option::of("[a-z]{1,8}\\.csv"), any::<bool>(), 1usize..17, any::<bool>()),
    );
    (scenario, computation, rest).prop_map(|(scenario, computation, (sp, rm, out))| RunConfig {
        scenario,
        computation,
        spectral: SpectralConfig {
            omega_min_ev: sp.0,
            omega_max_ev: sp.1,
            points_per_decade: sp.2,
        },
        regime_map: RegimeMapConfig {
            reference_distance_nm: rm.0,
            reference_temperature_k: rm.1,
        },
        output: OutputConfig {
            path: out.0.map(Into::into),
            format: if out.1 { Format::Json } else { Format::Csv },
            precision: out.2,
            timing: out.3,
        },
    })
}

proptest! {
    #[test]
    fn toml_round_trip(cfg in config()) {
        let text = cfg.to_toml().unwrap();
        let back = RunConfig::from_toml(&text).unwrap();
        prop_assert_eq!(&back, &cfg, "{}", text);
        prop_assert_eq!(back.to_toml().unwrap(), text);
    }
}
