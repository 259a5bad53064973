//! The three experiment drivers behind the subcommands.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;

use darboux::{
    build_fock_with_cap, classify, commutator_matrix, derive_seed, detect_crossings,
    moduli_dimension_compact, moduli_dimension_generalized, moduli_tangent_dimension_with_cap,
    number_expectation, observer_modes, parse_path, rs_blocks, sample_rotation, vacuum_residual,
    ConeSide, PlanckVector,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{
    ConeRow, ConeSummary, ModuliRow, ModuliSummary, ObserverRow, ObserverSummary, Report, Row,
    Summary,
};

/// The moduli tabulation is capped at n = 5; the tangent solver itself
/// accepts a little more, but the driver keeps runs interactive.
pub const MODULI_N_CAP: usize = 5;

/// Numerical slack added to the deformation bound so rows with zero defect
/// pass it with their rounding-level deviations.
const BOUND_SLACK: f64 = 1e-12;

/// Executes a configuration and assembles the report.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let start = Instant::now();
    let (results, summary) = match config.command.as_str() {
        "moduli" => cmd_moduli(config)?,
        "observers" => cmd_observers(config)?,
        "cone" => cmd_cone(config)?,
        other => return Err(CliError::Config(format!("unknown command {other:?}"))),
    };
    Ok(Report {
        tool: "darboux".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        results,
        summary,
        duration_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn cmd_moduli(config: &RunConfig) -> Result<(Vec<Row>, Summary), CliError> {
    if config.n == 0 {
        return Err(CliError::Config("moduli range must start at n = 1; --n 0 is empty".into()));
    }
    if config.n > MODULI_N_CAP {
        return Err(darboux::Error::ModuliCapExceeded { n: config.n, cap: MODULI_N_CAP }.into());
    }
    let mut rows = Vec::new();
    let mut all_match = true;
    for n in 1..=config.n {
        let tangent = moduli_tangent_dimension_with_cap(n, MODULI_N_CAP)?;
        let compact = moduli_dimension_compact(n)?;
        let generalized = moduli_dimension_generalized(n)?;
        let matches = tangent == compact;
        all_match &= matches;
        rows.push(Row::Moduli(ModuliRow {
            n,
            tangent_dimension: tangent,
            compact_dimension: compact,
            generalized_dimension: generalized,
            dimensions_match: matches,
        }));
    }
    let summary = Summary::Moduli(ModuliSummary { rows: rows.len(), all_match });
    Ok((rows, summary))
}

fn cmd_observers(config: &RunConfig) -> Result<(Vec<Row>, Summary), CliError> {
    if config.n == 0 {
        return Err(CliError::Config("observers need at least one mode; got --n 0".into()));
    }
    let fock = build_fock_with_cap(config.n, config.cutoff, config.dim_cap)?;
    let identity = DMatrix::<Complex64>::identity(config.n, config.n);

    let mut rows = Vec::with_capacity(config.samples);
    let mut unitary_samples = 0usize;
    let mut vacua_found = 0usize;
    let mut max_cr_defect = 0f64;
    let mut max_k_deviation = 0f64;
    let mut max_l_norm = 0f64;
    let mut bound_satisfied = true;

    for sample in 0..config.samples {
        let sample_seed = derive_seed(config.seed, sample as u64);
        let rotation = sample_rotation(config.n, sample_seed)?;
        let transform = rs_blocks(&rotation);
        let cr_defect = transform.s().norm();
        let (k, l) = commutator_matrix(&transform);
        let k_deviation = (&k - &identity).norm();
        let l_norm = l.norm();

        let modes = observer_modes(&fock, &transform)?;
        let vacuum = vacuum_residual(&fock, &modes)?;
        let vacuum_exists = vacuum.residual <= config.vacuum_threshold;
        let quanta_disagreement = if vacuum_exists {
            vacua_found += 1;
            Some(number_expectation(&fock, &vacuum.state)?)
        } else {
            None
        };

        if cr_defect < config.tol {
            unitary_samples += 1;
        }
        let bound = (1.0 + transform.r().norm() + cr_defect).powi(2) * cr_defect + BOUND_SLACK;
        bound_satisfied &= k_deviation <= bound;

        max_cr_defect = max_cr_defect.max(cr_defect);
        max_k_deviation = max_k_deviation.max(k_deviation);
        max_l_norm = max_l_norm.max(l_norm);

        rows.push(Row::Observer(ObserverRow {
            sample,
            sample_seed,
            cr_defect,
            k_deviation,
            l_norm,
            vacuum_residual: vacuum.residual,
            vacuum_exists,
            quanta_disagreement,
        }));
    }

    let summary = Summary::Observer(ObserverSummary {
        samples: config.samples,
        unitary_samples,
        vacua_found,
        max_cr_defect,
        max_k_deviation,
        max_l_norm,
        deformation_bound_satisfied: bound_satisfied,
    });
    Ok((rows, summary))
}

fn cmd_cone(config: &RunConfig) -> Result<(Vec<Row>, Summary), CliError> {
    let input = config
        .input
        .as_ref()
        .ok_or_else(|| CliError::Config("cone requires --input <PATH>".into()))?;
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", input.display())))?;

    let path = if text.trim_start().starts_with('[') {
        planck_path_from_json(&text)?
    } else {
        parse_path(&text).map_err(CliError::from)?
    };

    let crossings = detect_crossings(&path, config.tol).map_err(CliError::from)?;

    let mut rows = Vec::with_capacity(path.len());
    for (index, vector) in path.iter().enumerate() {
        let class = classify(vector, config.tol).map_err(CliError::from)?;
        let label = match class.side {
            ConeSide::Quantum => "quantum",
            ConeSide::OnCone => "on_cone",
            ConeSide::Classical => "classical",
        };
        rows.push(Row::Cone(ConeRow { index, value: class.value, class: label.into() }));
    }

    let summary = Summary::Cone(ConeSummary {
        samples: path.len(),
        crossing_count: crossings.len(),
        crossings,
    });
    Ok((rows, summary))
}

/// The JSON form of a path: an array of flat `4n`-value arrays, quantum
/// block first, matching the line-oriented text format.
fn planck_path_from_json(text: &str) -> Result<Vec<PlanckVector>, CliError> {
    let raw: Vec<Vec<f64>> = serde_json::from_str(text)
        .map_err(|e| CliError::Parse(format!("input JSON: {e}")))?;
    let mut expected_len = None;
    let mut path = Vec::with_capacity(raw.len());
    for (index, values) in raw.iter().enumerate() {
        let len = values.len();
        if len == 0 || len % 4 != 0 {
            return Err(CliError::Parse(format!("entry {index}: expected 4n values, got {len}")));
        }
        match expected_len {
            None => expected_len = Some(len),
            Some(expected) if expected != len => {
                return Err(CliError::Parse(format!(
                    "entry {index}: expected {expected} values as in the first entry, got {len}"
                )));
            }
            _ => {}
        }
        let half = len / 2;
        let vector = PlanckVector::new(
            nalgebra::DVector::from_row_slice(&values[..half]),
            nalgebra::DVector::from_row_slice(&values[half..]),
        )
        .map_err(|e| CliError::Parse(format!("entry {index}: {e}")))?;
        path.push(vector);
    }
    Ok(path)
}
