//! Run configuration shared by all subcommands.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Report output format. JSON is canonical; CSV is a lossy projection of the
/// per-item table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// A fully resolved run configuration. Every field has a default (listed on
/// the field); the echoed copy inside a report reproduces the run exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Subcommand name: `moduli`, `observers` or `cone`.
    pub command: String,
    /// Degrees of freedom. For `moduli` the tabulated range is `1..=n`
    /// (default 5); for `observers` the number of modes (default 2).
    pub n: usize,
    /// Base seed for the per-sample streams (default 0).
    pub seed: u64,
    /// Number of sampled rotations (default 10).
    pub samples: usize,
    /// Per-mode Fock occupation cutoff (default 6).
    pub cutoff: usize,
    /// Tolerance for boolean predicates and the cone band (default 1e-8).
    pub tol: f64,
    /// Residual below which an observer counts as possessing a vacuum
    /// (default 1e-6).
    pub vacuum_threshold: f64,
    /// Cap on the truncated Fock dimension (default 4096); overridable with
    /// the `DARBOUX_DIM_CAP` environment variable.
    pub dim_cap: usize,
    /// Input path for `cone` (default: none).
    pub input: Option<PathBuf>,
    /// Report destination (default: stdout).
    pub output: Option<PathBuf>,
    /// Output format (default: json).
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: String::new(),
            n: 2,
            seed: 0,
            samples: 10,
            cutoff: 6,
            tol: darboux::DEFAULT_TOL,
            vacuum_threshold: darboux::DEFAULT_VACUUM_THRESHOLD,
            dim_cap: darboux::DEFAULT_DIM_CAP,
            input: None,
            output: None,
            format: OutputFormat::Json,
        }
    }
}
