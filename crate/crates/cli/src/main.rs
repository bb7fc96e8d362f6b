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


use clap::{Args, Parser, Subcommand};
use emvisc::force::Route;
use emvisc::spectra::{Order, Statistics};
use emvisc_cli::commands;
use emvisc_cli::config::Format;
use emvisc_cli::{CliError, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Electromagnetic viscosity of an atom moving above a planar surface.
#[derive(Parser)]
#[command(name = "emvisc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Sweep worker threads (0 = all).
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,
    /// Force ordering: normal, shifted or symmetric.
    #[arg(long, global = true, value_parser = parse::<Route>)]
    route: Option<Route>,
    /// Occupation statistics: full or lte.
    #[arg(long, global = true, value_parser = parse::<Statistics>)]
    mode: Option<Statistics>,
    /// Atomic response: dressed or leading.
    #[arg(long, global = true, value_parser = parse::<Order>)]
    order: Option<Order>,
}

fn parse<T: std::str::FromStr<Err = emvisc::Error>>(s: &str) -> Result<T, String> {
    s.parse::<T>().map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Viscosity at one scenario, with its decomposition and asymptotic references.
    Viscosity,
    /// Viscosity over one or two swept axes.
    Sweep,
    /// Dominant mechanism over a distance x temperature grid.
    RegimeMap,
    /// Spectral density and Planck-derivative curves.
    SpectralDensity,
    /// Run the acceptance checks.
    Validate {
        /// Run only this criterion (repeatable).
        #[arg(long = "check", value_name = "N")]
        checks: Vec<u8>,
        /// Flip the sign of the zx spin kernel entry (mutation test).
        #[arg(long, hide = true)]
        perturb_kernel_sign: bool,
    },
}

fn load(flags: &Flags) -> Result<RunConfig, CliError> {
    let mut cfg = match &flags.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let c = &mut cfg.computation;
    if let Some(r) = flags.route {
        c.route = r;
    }
    if let Some(m) = flags.mode {
        c.mode = m;
    }
    if let Some(o) = flags.order {
        c.order = o;
    }
    if let Some(t) = flags.tol {
        c.rel_tol = t;
    }
    if let Some(w) = flags.workers {
        c.workers = w;
    }
    if let Some(f) = flags.format {
        cfg.output.format = f;
    }
    if let Some(o) = &flags.out {
        cfg.output.path = Some(o.clone());
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load(&cli.flags)?;
    match &cli.command {
        Command::Viscosity => commands::cmd_viscosity(&cfg),
        Command::Sweep => {
            let failed = commands::cmd_sweep(&cfg)?;
            if failed > 0 {
                return Err(CliError::SweepRows(failed));
            }
            Ok(())
        }
        Command::RegimeMap => commands::cmd_regime_map(&cfg),
        Command::SpectralDensity => commands::cmd_spectral_density(&cfg),
        Command::Validate {
            checks,
            perturb_kernel_sign,
        } => {
            let report = commands::cmd_validate(&cfg, checks, *perturb_kernel_sign, cli.flags.workers.is_some())?;
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            if failed > 0 {
                return Err(CliError::Acceptance(failed, report.checks.len()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            // bad arguments are validation errors
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("emvisc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
