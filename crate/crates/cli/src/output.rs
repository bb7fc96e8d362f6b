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


//! Tabular and JSON writers. Output goes to a file or to stdout.

use crate::error::CliError;
use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// `x` with `digits` significant digits in scientific notation.
pub fn sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{:.*e}", digits.saturating_sub(1), x)
    }
}

/// Opens `path`, or stdout when it is `None`.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| output_error(Some(p), e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

pub fn output_error(path: Option<&Path>, e: impl std::fmt::Display) -> CliError {
    CliError::Output {
        path: path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string()),
        message: e.to_string(),
    }
}

/// One table row as `(column, formatted value)` pairs.
pub type Row = Vec<(&'static str, String)>;

/// Writes `rows` as CSV, preceded by `# key=value` comment lines.
pub fn write_csv(path: Option<&Path>, comments: &[(String, String)], rows: &[Row]) -> Result<(), CliError> {
    let mut out = sink(path)?;
    for (k, v) in comments {
        writeln!(out, "# {k}={v}").map_err(|e| output_error(path, e))?;
    }
    {
        let mut w = csv::Writer::from_writer(&mut out);
        if let Some(first) = rows.first() {
            w.write_record(first.iter().map(|c| c.0))
                .map_err(|e| output_error(path, e))?;
        }
        for r in rows {
            w.write_record(r.iter().map(|c| c.1.as_str()))
                .map_err(|e| output_error(path, e))?;
        }
        w.flush().map_err(|e| output_error(path, e))?;
    }
    out.flush().map_err(|e| output_error(path, e))
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| output_error(path, e))?;
    writeln!(out).map_err(|e| output_error(path, e))?;
    out.flush().map_err(|e| output_error(path, e))
}
