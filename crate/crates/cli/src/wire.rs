//! Wire formats for the library's domain types.
//!
//! Real matrices serialize as row-major arrays with an explicit `n` field;
//! complex matrices as row-major arrays of `[re, im]` pairs; Fock states as
//! `[re, im]` amplitude pairs in the lexicographic occupation order. Parsing
//! re-validates through the library constructors, so a wire object that
//! deserializes successfully satisfies the same invariants as a freshly
//! constructed value.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use darboux::{ComplexStructure, Metric, ModeTransform, Rotation, SymplecticForm};

/// Row-major flattening of a real matrix.
fn flatten(m: &DMatrix<f64>) -> Vec<f64> {
    (0..m.nrows()).flat_map(|r| (0..m.ncols()).map(move |c| m[(r, c)])).collect()
}

/// Row-major flattening of a complex matrix into `[re, im]` pairs.
fn flatten_complex(m: &DMatrix<Complex64>) -> Vec<[f64; 2]> {
    (0..m.nrows())
        .flat_map(|r| (0..m.ncols()).map(move |c| [m[(r, c)].re, m[(r, c)].im]))
        .collect()
}

fn unflatten(n: usize, values: &[f64]) -> Result<DMatrix<f64>, darboux::Error> {
    let dim = 2 * n;
    if values.len() != dim * dim {
        return Err(darboux::Error::DimensionMismatch { expected: dim * dim, actual: values.len() });
    }
    Ok(DMatrix::from_row_slice(dim, dim, values))
}

fn unflatten_complex(n: usize, values: &[[f64; 2]]) -> Result<DMatrix<Complex64>, darboux::Error> {
    if values.len() != n * n {
        return Err(darboux::Error::DimensionMismatch { expected: n * n, actual: values.len() });
    }
    Ok(DMatrix::from_fn(n, n, |r, c| {
        let [re, im] = values[r * n + c];
        Complex64::new(re, im)
    }))
}

/// A rotation on the wire: `2n×2n` row-major entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationWire {
    pub n: usize,
    pub matrix: Vec<f64>,
}

impl From<&Rotation> for RotationWire {
    fn from(r: &Rotation) -> Self {
        Self { n: r.n(), matrix: flatten(r.matrix()) }
    }
}

impl TryFrom<RotationWire> for Rotation {
    type Error = darboux::Error;
    fn try_from(w: RotationWire) -> Result<Self, Self::Error> {
        Rotation::new(unflatten(w.n, &w.matrix)?)
    }
}

/// A complex structure on the wire: `2n×2n` row-major entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexStructureWire {
    pub n: usize,
    pub matrix: Vec<f64>,
}

impl From<&ComplexStructure> for ComplexStructureWire {
    fn from(j: &ComplexStructure) -> Self {
        Self { n: j.n(), matrix: flatten(j.matrix()) }
    }
}

impl TryFrom<ComplexStructureWire> for ComplexStructure {
    type Error = darboux::Error;
    fn try_from(w: ComplexStructureWire) -> Result<Self, Self::Error> {
        ComplexStructure::new(unflatten(w.n, &w.matrix)?)
    }
}

/// A symplectic form on the wire: `2n×2n` row-major entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticFormWire {
    pub n: usize,
    pub matrix: Vec<f64>,
}

impl From<&SymplecticForm> for SymplecticFormWire {
    fn from(w: &SymplecticForm) -> Self {
        Self { n: w.n(), matrix: flatten(w.matrix()) }
    }
}

impl TryFrom<SymplecticFormWire> for SymplecticForm {
    type Error = darboux::Error;
    fn try_from(w: SymplecticFormWire) -> Result<Self, Self::Error> {
        SymplecticForm::new(unflatten(w.n, &w.matrix)?)
    }
}

/// A metric on the wire: `2n×2n` row-major entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricWire {
    pub n: usize,
    pub matrix: Vec<f64>,
}

impl From<&Metric> for MetricWire {
    fn from(g: &Metric) -> Self {
        Self { n: g.n(), matrix: flatten(g.matrix()) }
    }
}

/// Mode-mixing blocks on the wire: `n×n` row-major `[re, im]` pairs each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeTransformWire {
    pub n: usize,
    pub r: Vec<[f64; 2]>,
    pub s: Vec<[f64; 2]>,
}

impl From<&ModeTransform> for ModeTransformWire {
    fn from(t: &ModeTransform) -> Self {
        Self { n: t.n(), r: flatten_complex(t.r()), s: flatten_complex(t.s()) }
    }
}

impl TryFrom<ModeTransformWire> for ModeTransform {
    type Error = darboux::Error;
    fn try_from(w: ModeTransformWire) -> Result<Self, Self::Error> {
        ModeTransform::new(unflatten_complex(w.n, &w.r)?, unflatten_complex(w.n, &w.s)?)
    }
}

/// State amplitudes as `[re, im]` pairs, lexicographic in `(k₁, …, kₙ)`.
pub fn amplitude_pairs(state: &DVector<Complex64>) -> Vec<[f64; 2]> {
    state.iter().map(|z| [z.re, z.im]).collect()
}

/// Rebuilds a state vector from `[re, im]` amplitude pairs.
pub fn state_from_pairs(pairs: &[[f64; 2]]) -> DVector<Complex64> {
    DVector::from_iterator(pairs.len(), pairs.iter().map(|&[re, im]| Complex64::new(re, im)))
}
