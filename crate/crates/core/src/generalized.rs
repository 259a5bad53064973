//! Pointwise classification data for generalized complex structures, and the
//! Planck cone.
//!
//! At constant coefficients a generalized complex structure is classified by
//! the rank of its Poisson block: the type is `k = n - rank/2`, with `k = 0`
//! the symplectic case and `k = n` the complex case. [`is_regular`] is the
//! discretized reading of regularity — equal numerical rank across a point
//! and its sampled neighborhood; supplying the neighborhood samples is the
//! caller's responsibility.
//!
//! The doubled moduli count compares the compact coset SO(2n)/U(n), of
//! dimension `n(n-1)`, with its split-signature partner SO(2n,2n)/U(n,n), of
//! dimension `2n(2n-1)`. The indefinite metric behind the split version is
//! the diagonal quadratic form on `R^{2n}⊕R^{2n}` with signature (2n, 2n);
//! its null set is the Planck cone
//!
//! ```text
//! Σⱼ (Qʲ)² + (Pⱼ)²  -  Σⱼ (qʲ)² + (pⱼ)²  =  0
//! ```
//!
//! evaluated here on real coordinate vectors with a "quantum" block and a
//! "classical" block. [`detect_crossings`] reports the transversal sign
//! changes of that form along a sampled path; each one is a duality event.

use nalgebra::{DMatrix, DVector};

use crate::complex_structure::DEFAULT_RANK_REL_TOL;
use crate::error::{Error, Result};
use crate::phase_space::check_even_square;
use crate::DEFAULT_TOL;

/// The value of a Poisson structure at a point: a real skew-symmetric
/// `2n×2n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonBlock {
    n: usize,
    matrix: DMatrix<f64>,
}

impl PoissonBlock {
    /// Validates skew-symmetry at the default tolerance.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TOL)
    }

    /// Validates skew-symmetry at an explicit tolerance.
    pub fn with_tolerance(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        let n = check_even_square(&matrix)?;
        let defect = (matrix.transpose() + &matrix).norm();
        if defect > tol {
            return Err(Error::NotSkewSymmetric { defect, tol });
        }
        Ok(Self { n, matrix })
    }

    /// Degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The underlying `2n×2n` matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Numerical rank at a relative singular-value threshold.
    pub fn numerical_rank(&self, rel_tol: f64) -> usize {
        let singular_values = self.matrix.singular_values();
        let max = singular_values.max();
        if max == 0.0 {
            return 0;
        }
        singular_values.iter().filter(|&&s| s > rel_tol * max).count()
    }
}

/// A point of `R^{2n}⊕R^{2n}` split into its quantum and classical blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanckVector {
    quantum: DVector<f64>,
    classical: DVector<f64>,
}

impl PlanckVector {
    /// Both blocks must be `2n`-dimensional for the same `n ≥ 1`.
    pub fn new(quantum: DVector<f64>, classical: DVector<f64>) -> Result<Self> {
        if quantum.is_empty() {
            return Err(Error::ZeroModes);
        }
        if !quantum.len().is_multiple_of(2) {
            return Err(Error::OddDimension { len: quantum.len() });
        }
        if classical.len() != quantum.len() {
            return Err(Error::DimensionMismatch {
                expected: quantum.len(),
                actual: classical.len(),
            });
        }
        Ok(Self { quantum, classical })
    }

    /// Degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.quantum.len() / 2
    }

    /// The quantum block (the `Qʲ, Pⱼ` slots).
    pub fn quantum(&self) -> &DVector<f64> {
        &self.quantum
    }

    /// The classical block (the `qʲ, pⱼ` slots).
    pub fn classical(&self) -> &DVector<f64> {
        &self.classical
    }

    /// The negated vector; the cone form is even under this.
    pub fn negate(&self) -> PlanckVector {
        PlanckVector { quantum: -&self.quantum, classical: -&self.classical }
    }
}

/// Which side of the Planck cone a vector falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeSide {
    /// The quantum-block norm dominates.
    Quantum,
    /// On the cone to within the tolerance band.
    OnCone,
    /// The classical-block norm dominates.
    Classical,
}

/// Cone classification of a vector together with the signed form value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeClass {
    /// Side of the cone.
    pub side: ConeSide,
    /// The signed quadratic-form value.
    pub value: f64,
}

/// The type `k = n - rank(P)/2` of a constant-coefficient generalized
/// complex structure, at the default rank threshold.
pub fn gcs_type(p: &PoissonBlock) -> Result<usize> {
    gcs_type_with_threshold(p, DEFAULT_RANK_REL_TOL)
}

/// [`gcs_type`] with an explicit relative singular-value threshold; exposed
/// because near-degenerate Poisson blocks are exactly the interesting
/// boundary cases.
pub fn gcs_type_with_threshold(p: &PoissonBlock, rel_tol: f64) -> Result<usize> {
    let rank = p.numerical_rank(rel_tol);
    // skew-symmetric spectra pair up, so an odd count means a singular value
    // sits on the threshold
    if !rank.is_multiple_of(2) {
        return Err(Error::OddSkewRank { rank });
    }
    Ok(p.n() - rank / 2)
}

/// Discretized regularity: the first entry is the point, the rest its
/// sampled neighborhood; true iff all entries have equal numerical rank.
/// A single-entry list is vacuously regular.
pub fn is_regular(samples: &[PoissonBlock]) -> Result<bool> {
    is_regular_with_threshold(samples, DEFAULT_RANK_REL_TOL)
}

/// [`is_regular`] with an explicit relative singular-value threshold.
pub fn is_regular_with_threshold(samples: &[PoissonBlock], rel_tol: f64) -> Result<bool> {
    let first = samples.first().ok_or(Error::EmptyInput)?;
    let reference = first.numerical_rank(rel_tol);
    Ok(samples[1..].iter().all(|p| p.numerical_rank(rel_tol) == reference))
}

/// Dimension of SO(2n)/U(n): `dim SO(2n) - dim U(n) = n(2n-1) - n² = n(n-1)`.
pub fn moduli_dimension_compact(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    let so = 2 * n * (2 * n - 1) / 2;
    let u = n * n;
    Ok(so - u)
}

/// Dimension of SO(2n,2n)/U(n,n): `2n(4n-1) - (2n)² = 2n(2n-1)`. The
/// signature does not change the real group dimensions.
pub fn moduli_dimension_generalized(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    let so_split = 4 * n * (4 * n - 1) / 2;
    let u_split = (2 * n) * (2 * n);
    Ok(so_split - u_split)
}

/// The diagonal matrix of the cone form on `R^{4n}`: `+1` on the quantum
/// block, `-1` on the classical block.
pub fn planck_form_matrix(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    let dim = 4 * n;
    Ok(DMatrix::from_fn(dim, dim, |r, c| {
        if r != c {
            0.0
        } else if r < 2 * n {
            1.0
        } else {
            -1.0
        }
    }))
}

/// Eigenvalue sign counts `(positives, negatives)` of the cone form:
/// `(2n, 2n)`.
pub fn planck_form_signature(n: usize) -> Result<(usize, usize)> {
    let form = planck_form_matrix(n)?;
    let eigenvalues = form.symmetric_eigen().eigenvalues;
    let positives = eigenvalues.iter().filter(|&&e| e > 0.0).count();
    let negatives = eigenvalues.iter().filter(|&&e| e < 0.0).count();
    Ok((positives, negatives))
}

/// The signed cone-form value `‖quantum‖² - ‖classical‖²`.
pub fn planck_form_value(v: &PlanckVector) -> f64 {
    v.quantum.norm_squared() - v.classical.norm_squared()
}

/// Classifies a vector against the cone with a tolerance band `|value| ≤ tol`.
pub fn classify(v: &PlanckVector, tol: f64) -> Result<ConeClass> {
    if tol < 0.0 {
        return Err(Error::NegativeTolerance { tol });
    }
    let value = planck_form_value(v);
    let side = if value.abs() <= tol {
        ConeSide::OnCone
    } else if value > 0.0 {
        ConeSide::Quantum
    } else {
        ConeSide::Classical
    };
    Ok(ConeClass { side, value })
}

/// Indices `i` of path segments `(i, i+1)` where the cone-form value changes
/// strict sign. On-cone samples join the side of the next strictly signed
/// sample, so only transversal crossings are counted; a fully on-cone path
/// yields none.
pub fn detect_crossings(path: &[PlanckVector], tol: f64) -> Result<Vec<usize>> {
    if tol < 0.0 {
        return Err(Error::NegativeTolerance { tol });
    }
    if path.len() < 2 {
        return Err(Error::PathTooShort { len: path.len() });
    }
    let n = path[0].n();
    if let Some(bad) = path.iter().find(|v| v.n() != n) {
        return Err(Error::DimensionMismatch { expected: 2 * n, actual: 2 * bad.n() });
    }

    let raw_signs: Vec<i8> = path
        .iter()
        .map(|v| {
            let value = planck_form_value(v);
            if value.abs() <= tol {
                0
            } else if value > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();

    // on-cone samples inherit the next strict sign
    let mut effective = raw_signs.clone();
    let mut next_strict = 0i8;
    for i in (0..effective.len()).rev() {
        if effective[i] == 0 {
            effective[i] = next_strict;
        } else {
            next_strict = effective[i];
        }
    }

    Ok(effective
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != 0 && w[1] != 0 && w[0] != w[1])
        .map(|(i, _)| i)
        .collect())
}

/// Parses the line-oriented path format: one vector per line as `4n`
/// whitespace-separated decimals, quantum block first. Blank lines are
/// skipped; the first data line fixes `n`.
pub fn parse_path(text: &str) -> Result<Vec<PlanckVector>> {
    let mut vectors = Vec::new();
    let mut expected_len: Option<usize> = None;
    for (index, raw) in text.lines().enumerate() {
        let line_number = index + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut values = Vec::new();
        for token in line.split_whitespace() {
            let value: f64 = token.parse().map_err(|_| Error::PathParse {
                line: line_number,
                message: format!("cannot parse {token:?} as a number"),
            })?;
            values.push(value);
        }
        let len = values.len();
        if len == 0 || len % 4 != 0 {
            return Err(Error::PathParse {
                line: line_number,
                message: format!("expected 4n whitespace-separated values, got {len}"),
            });
        }
        if let Some(expected) = expected_len {
            if len != expected {
                return Err(Error::PathParse {
                    line: line_number,
                    message: format!("expected {expected} values as on the first line, got {len}"),
                });
            }
        } else {
            expected_len = Some(len);
        }
        let half = len / 2;
        let vector = PlanckVector::new(
            DVector::from_row_slice(&values[..half]),
            DVector::from_row_slice(&values[half..]),
        )
        .map_err(|e| Error::PathParse { line: line_number, message: e.to_string() })?;
        vectors.push(vector);
    }
    Ok(vectors)
}
