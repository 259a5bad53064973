//! Command-line front end for the `darboux` library: seeded experiment
//! drivers with machine-readable, byte-reproducible reports.
//!
//! Three subcommands cover the library's surface: `moduli` tabulates
//! moduli-space dimensions, `observers` samples rotations and quantifies the
//! induced disagreement about quanta, and `cone` classifies a path of
//! phase-space points against the Planck cone. Identical configurations
//! produce byte-identical result arrays; only the report's `duration_ms`
//! varies between runs.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod wire;

pub use commands::{run, MODULI_N_CAP};
pub use config::{OutputFormat, RunConfig};
pub use error::{CliError, EXIT_CAP, EXIT_CONFIG, EXIT_IO, EXIT_OK, EXIT_PARSE};
pub use report::{to_canonical_json, to_csv, Report, Row, Summary};

/// Environment variable overriding the truncated-Fock dimension cap.
pub const DIM_CAP_ENV: &str = "DARBOUX_DIM_CAP";
