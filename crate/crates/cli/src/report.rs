//! Report structure and serialization.
//!
//! JSON is the canonical format (schema in `schema/report.schema.json`).
//! Every float is printed with 17 significant digits in scientific notation,
//! which round-trips `f64` exactly and makes reports byte-comparable; the
//! only nondeterministic field is `duration_ms`, which comparisons must
//! exclude. CSV output is a lossy projection of the per-item table.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

/// One tabulated moduli row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliRow {
    pub n: usize,
    /// Numerical null-space count of the tangent system at J₀.
    pub tangent_dimension: usize,
    /// Group-dimension formula for SO(2n)/U(n).
    pub compact_dimension: usize,
    /// Group-dimension formula for SO(2n,2n)/U(n,n).
    pub generalized_dimension: usize,
    /// Whether the numerical and formula values agree.
    pub dimensions_match: bool,
}

/// Per-sample observer diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObserverRow {
    pub sample: usize,
    /// Seed of this sample's stream, derived from (seed, sample).
    pub sample_seed: u64,
    /// Frobenius norm of the S block.
    pub cr_defect: f64,
    /// ‖K - I‖ for K = [B, B⁺].
    pub k_deviation: f64,
    /// ‖L‖ for L = [B, B].
    pub l_norm: f64,
    /// Minimum of Σ‖Bψ‖² over the sub-cutoff subspace.
    pub vacuum_residual: f64,
    /// Whether the residual is below the vacuum threshold.
    pub vacuum_exists: bool,
    /// Standard quanta in the observer's vacuum; absent when no vacuum
    /// exists at this truncation.
    pub quanta_disagreement: Option<f64>,
}

/// Per-sample cone classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeRow {
    pub index: usize,
    pub value: f64,
    /// One of `quantum`, `on_cone`, `classical`.
    pub class: String,
}

/// A per-item result row; the variant matches the subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Row {
    Moduli(ModuliRow),
    Observer(ObserverRow),
    Cone(ConeRow),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModuliSummary {
    pub rows: usize,
    pub all_match: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObserverSummary {
    pub samples: usize,
    /// Samples with CR defect below the run tolerance.
    pub unitary_samples: usize,
    /// Samples whose residual is below the vacuum threshold.
    pub vacua_found: usize,
    pub max_cr_defect: f64,
    pub max_k_deviation: f64,
    pub max_l_norm: f64,
    /// Whether ‖K-I‖ ≤ (1 + ‖R‖ + ‖S‖)²·defect held on every row, the
    /// algebraic link between the CR defect and the commutator deformation.
    pub deformation_bound_satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeSummary {
    pub samples: usize,
    pub crossing_count: usize,
    /// Segment indices where the cone-form value changes strict sign.
    pub crossings: Vec<usize>,
}

/// Summary statistics; the variant matches the subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Summary {
    Moduli(ModuliSummary),
    Observer(ObserverSummary),
    Cone(ConeSummary),
}

/// A complete run report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub results: Vec<Row>,
    pub summary: Summary,
    /// Wall-clock duration; excluded from determinism comparisons.
    pub duration_ms: f64,
}

/// serde_json formatter printing every float with 17 significant digits.
pub struct SciFormatter;

impl serde_json::ser::Formatter for SciFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any value with the canonical float formatting.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut bytes = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut bytes, SciFormatter);
    value.serialize(&mut serializer).expect("report values serialize infallibly");
    String::from_utf8(bytes).expect("serializer output is UTF-8")
}

/// Canonical float-to-text used by both output formats.
pub fn format_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// The lossy CSV projection: header plus one line per result row.
pub fn to_csv(report: &Report) -> String {
    let mut out = String::new();
    match report.config.command.as_str() {
        "moduli" => {
            out.push_str("n,tangent_dimension,compact_dimension,generalized_dimension,dimensions_match\n");
        }
        "observers" => {
            out.push_str("sample,sample_seed,cr_defect,k_deviation,l_norm,vacuum_residual,vacuum_exists,quanta_disagreement\n");
        }
        "cone" => {
            out.push_str("index,value,class\n");
        }
        _ => {}
    }
    for row in &report.results {
        match row {
            Row::Moduli(r) => {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.n, r.tangent_dimension, r.compact_dimension, r.generalized_dimension, r.dimensions_match
                ));
            }
            Row::Observer(r) => {
                let disagreement =
                    r.quanta_disagreement.map(format_float).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.sample,
                    r.sample_seed,
                    format_float(r.cr_defect),
                    format_float(r.k_deviation),
                    format_float(r.l_norm),
                    format_float(r.vacuum_residual),
                    r.vacuum_exists,
                    disagreement
                ));
            }
            Row::Cone(r) => {
                out.push_str(&format!("{},{},{}\n", r.index, format_float(r.value), r.class));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_print_with_17_significant_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(to_canonical_json(&vec![0.5f64]), "[5.0000000000000000e-1]");
    }

    #[test]
    fn canonical_floats_round_trip_exactly() {
        for &x in &[0.1f64, 2.0 / 3.0, 1e-300, 12345.6789e77, f64::MIN_POSITIVE] {
            let text = format_float(x);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{text}");
        }
    }

    #[test]
    fn untagged_rows_serialize_flat() {
        let row = Row::Cone(ConeRow { index: 3, value: -1.0, class: "classical".into() });
        let json = to_canonical_json(&row);
        assert_eq!(json, r#"{"index":3,"value":-1.0000000000000000e0,"class":"classical"}"#);
        let back: Row = serde_json::from_str(&json).unwrap();
        assert_eq!(back, row);
    }
}
