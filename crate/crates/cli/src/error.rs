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


use thiserror::Error;

/// Exit codes: 1 validation, 2 computation, 3 acceptance failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("{context}: {source}")]
    Computation {
        context: String,
        #[source]
        source: emvisc::Error,
    },
    #[error("{path}: {message}")]
    Output { path: String, message: String },
    #[error("{0} sweep point(s) failed; see the status column")]
    SweepRows(usize),
    #[error("{0} of {1} acceptance checks failed")]
    Acceptance(usize, usize),
}

impl CliError {
    pub fn invalid(field: &str, message: impl Into<String>) -> Self {
        CliError::Invalid {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// Wraps a library error; parameter errors count as validation failures.
    pub fn computation(context: impl Into<String>, source: emvisc::Error) -> Self {
        match source {
            emvisc::Error::InvalidParameter(m) | emvisc::Error::Unsupported(m) => CliError::Invalid {
                field: context.into(),
                message: m,
            },
            source => CliError::Computation {
                context: context.into(),
                source,
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Invalid { .. } => 1,
            CliError::Computation { .. } | CliError::Output { .. } | CliError::SweepRows(_) => 2,
            CliError::Acceptance(..) => 3,
        }
    }
}
