// Copyright 2026 Rydberg-WGHZ Contributors
// SPDX-License-Identifier: Apache-2.0

//! Error types shared by every module.

use std::fmt;

/// Diagnostics attached to a failed propagation.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationDiagnostics {
    pub reason: String,
    pub steps: usize,
    pub step_size: f64,
    pub halving_delta: f64,
    pub norm_drift: f64,
    pub trace_drift: f64,
    pub min_eigenvalue: f64,
}

impl fmt::Display for IntegrationDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (steps={}, h={:.3e}, halving_delta={:.3e}, norm_drift={:.3e}, trace_drift={:.3e}, min_eig={:.3e})",
            self.reason,
            self.steps,
            self.step_size,
            self.halving_delta,
            self.norm_drift,
            self.trace_drift,
            self.min_eigenvalue
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular denominator: {0}")]
    Singularity(String),

    #[error("configuration error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("orthogonal drive: field {field} has |Σ| = {overlap:.3e} below floor {floor:.3e}")]
    OrthogonalDrive { field: usize, overlap: f64, floor: f64 },

    #[error("integration error: {0}")]
    Integration(Box<IntegrationDiagnostics>),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
