//! Darboux-ordered phase space `R^{2n}`.
//!
//! Every matrix and vector in this crate uses one fixed coordinate ordering,
//! `(q¹, …, qⁿ, p₁, …, pₙ)`. In that ordering the standard structures are
//!
//! ```text
//! ω = Σⱼ dqʲ ∧ dpⱼ               block form [[0, I], [-I, 0]]
//! g = ½ Σⱼ (dqʲ)² + (dpⱼ)²       i.e. ½·I
//! zʲ = (qʲ + i pⱼ) / √2
//! ```
//!
//! with ħ = 1. The factor ½ in `g` is deliberate: together with the 1/√2 in
//! the holomorphic coordinates it makes [`hermitian_norm`] agree exactly with
//! the real bilinear metric (many references drop the factor and pick up
//! stray 2s instead). The sign convention is ω(q-direction, p-direction) = +1.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// A fixed number of degrees of freedom together with the Darboux ordering
/// convention. Mostly a carrier for index bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DarbouxFrame {
    n: usize,
}

impl DarbouxFrame {
    /// A frame with `n ≥ 1` degrees of freedom.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModes);
        }
        Ok(Self { n })
    }

    /// Number of degrees of freedom.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension of phase space, `2n`.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Index of `qʲ` in the fixed ordering (`j` is 0-based).
    pub fn q_index(&self, j: usize) -> usize {
        debug_assert!(j < self.n);
        j
    }

    /// Index of `pⱼ` in the fixed ordering (`j` is 0-based).
    pub fn p_index(&self, j: usize) -> usize {
        debug_assert!(j < self.n);
        self.n + j
    }
}

/// The matrix of a symplectic form in Darboux ordering: skew-symmetric and
/// nondegenerate.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    /// Wraps a `2n×2n` matrix after checking skew-symmetry and invertibility.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(matrix, crate::DEFAULT_TOL)
    }

    /// Same as [`SymplecticForm::new`] with an explicit tolerance for the
    /// skew-symmetry check.
    pub fn with_tolerance(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        let n = check_even_square(&matrix)?;
        let defect = (matrix.transpose() + &matrix).norm();
        if defect > tol {
            return Err(Error::NotSkewSymmetric { defect, tol });
        }
        if matrix.clone().lu().determinant() == 0.0 {
            return Err(Error::NotSkewSymmetric { defect: f64::INFINITY, tol });
        }
        Ok(Self { n, matrix })
    }

    pub(crate) fn new_unchecked(n: usize, matrix: DMatrix<f64>) -> Self {
        Self { n, matrix }
    }

    /// Degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The underlying `2n×2n` matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Evaluates the form on a pair of vectors.
    pub fn apply(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (u.transpose() * &self.matrix * v)[(0, 0)]
    }
}

/// The matrix of a positive-definite metric in Darboux ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    n: usize,
    matrix: DMatrix<f64>,
}

impl Metric {
    pub(crate) fn new_unchecked(n: usize, matrix: DMatrix<f64>) -> Self {
        Self { n, matrix }
    }

    /// Degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The underlying `2n×2n` matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Evaluates `g(u, v)`.
    pub fn apply(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        (u.transpose() * &self.matrix * v)[(0, 0)]
    }
}

/// The standard symplectic form `ω = Σⱼ dqʲ∧dpⱼ`, block form `[[0, I], [-I, 0]]`.
pub fn standard_symplectic(n: usize) -> Result<SymplecticForm> {
    let frame = DarbouxFrame::new(n)?;
    let mut m = DMatrix::<f64>::zeros(frame.dim(), frame.dim());
    for j in 0..n {
        m[(frame.q_index(j), frame.p_index(j))] = 1.0;
        m[(frame.p_index(j), frame.q_index(j))] = -1.0;
    }
    Ok(SymplecticForm::new_unchecked(n, m))
}

/// The standard Euclidean metric `g = ½ Σⱼ (dqʲ)² + (dpⱼ)²`, i.e. `½·I`.
pub fn standard_metric(n: usize) -> Result<Metric> {
    let frame = DarbouxFrame::new(n)?;
    let m = DMatrix::<f64>::identity(frame.dim(), frame.dim()) * 0.5;
    Ok(Metric::new_unchecked(n, m))
}

/// Maps a real Darboux vector to its holomorphic coordinates,
/// `zʲ = (qʲ + i pⱼ)/√2`.
pub fn to_holomorphic(v: &DVector<f64>) -> Result<DVector<Complex64>> {
    let n = check_even_vector(v)?;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    Ok(DVector::from_fn(n, |j, _| {
        Complex64::new(v[j] * inv_sqrt2, v[n + j] * inv_sqrt2)
    }))
}

/// The Hermitian norm `Σⱼ z̄ʲzʲ` of the holomorphic coordinates of `v`.
///
/// Numerically equal to `vᵀ g v` with `g` the standard metric; both routes
/// are the same quadratic form written in different coordinates.
pub fn hermitian_norm(v: &DVector<f64>) -> Result<f64> {
    let z = to_holomorphic(v)?;
    Ok(z.iter().map(|zj| zj.norm_sqr()).sum())
}

/// The unitary change of basis from Darboux coordinates to stacked
/// holomorphic coordinates `(z, z̄)`.
///
/// Row block `0..n` produces `z`, row block `n..2n` produces `z̄`; the matrix
/// is unitary because of the 1/√2 normalization.
pub fn holomorphic_basis(n: usize) -> Result<DMatrix<Complex64>> {
    let frame = DarbouxFrame::new(n)?;
    let dim = frame.dim();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut t = DMatrix::<Complex64>::zeros(dim, dim);
    for j in 0..n {
        t[(j, frame.q_index(j))] = Complex64::new(s, 0.0);
        t[(j, frame.p_index(j))] = Complex64::new(0.0, s);
        t[(n + j, frame.q_index(j))] = Complex64::new(s, 0.0);
        t[(n + j, frame.p_index(j))] = Complex64::new(0.0, -s);
    }
    Ok(t)
}

pub(crate) fn check_even_square(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), actual: m.ncols() });
    }
    if m.nrows() == 0 {
        return Err(Error::ZeroModes);
    }
    if !m.nrows().is_multiple_of(2) {
        return Err(Error::OddDimension { len: m.nrows() });
    }
    Ok(m.nrows() / 2)
}

fn check_even_vector(v: &DVector<f64>) -> Result<usize> {
    if v.is_empty() {
        return Err(Error::ZeroModes);
    }
    if !v.len().is_multiple_of(2) {
        return Err(Error::OddDimension { len: v.len() });
    }
    Ok(v.len() / 2)
}
