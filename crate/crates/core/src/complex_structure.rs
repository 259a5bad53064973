//! Linear complex structures on `R^{2n}` and their moduli.
//!
//! A linear complex structure is a real matrix `J` with `J² = -I`; it declares
//! which real-linear combinations of the Darboux coordinates count as
//! holomorphic. The reference structure `J₀` acts as `(q, p) ↦ (-p, q)` and
//! corresponds to the coordinates `zʲ = (qʲ + i pⱼ)/√2`.
//!
//! Every special-orthogonal matrix `O` defines a structure by conjugation,
//! `J = O J₀ Oᵀ`: the columns of `O` are the rotated axes, and the holomorphic
//! coordinates adapted to them are `w = R z + S z̄` where `(R, S)` are the
//! `n×n` blocks of `O` rewritten in the `(z, z̄)` basis (see [`rs_blocks`]).
//! The `S` block measures the failure of the Cauchy–Riemann conditions:
//! `S = 0` exactly when `O` commutes with `J₀`, i.e. when the rotation is a
//! unitary transformation of the `z` coordinates. Structures therefore form
//! the coset space SO(2n)/U(n), of dimension `n(n-1)`, which
//! [`moduli_tangent_dimension`] verifies numerically by solving
//! `Xᵀ = -X`, `XJ₀ + J₀X = 0` for the tangent space at `J₀`.
//!
//! Orientation-reversing orthogonal matrices are supported behind the
//! [`Rotation::orientation_preserving`] flag; they produce the conjugate
//! family of structures (e.g. `diag(1, -1)` sends `J₀` to `-J₀`) and are
//! excluded from the moduli count, which fixes an orientation.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::phase_space::{check_even_square, holomorphic_basis, standard_metric, DarbouxFrame, SymplecticForm};
use crate::DEFAULT_TOL;

/// Cost guard for the tangent-space solver; override with
/// [`moduli_tangent_dimension_with_cap`].
pub const DEFAULT_MODULI_CAP: usize = 8;

/// Relative singular-value threshold used for numerical rank decisions.
pub const DEFAULT_RANK_REL_TOL: f64 = 1e-8;

/// A real orthogonal matrix in Darboux ordering.
///
/// Validated at construction: `OᵀO = I` to tolerance. The determinant sign is
/// recorded in the `orientation_preserving` flag so orientation-reversing
/// candidates can be handled explicitly instead of silently.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    matrix: DMatrix<f64>,
    orientation_preserving: bool,
}

impl Rotation {
    /// Validates orthogonality at the default tolerance.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TOL)
    }

    /// Validates orthogonality at an explicit tolerance on the Frobenius
    /// defect `‖OᵀO - I‖`.
    pub fn with_tolerance(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        check_even_square(&matrix)?;
        let dim = matrix.nrows();
        let defect = (matrix.transpose() * &matrix - DMatrix::identity(dim, dim)).norm();
        if defect > tol {
            return Err(Error::NotOrthogonal { defect, tol });
        }
        Ok(Self::new_unchecked(matrix))
    }

    /// Wraps a matrix that is orthogonal by construction.
    pub(crate) fn new_unchecked(matrix: DMatrix<f64>) -> Self {
        let orientation_preserving = matrix.clone().lu().determinant() > 0.0;
        Self { matrix, orientation_preserving }
    }

    /// The identity rotation on `R^{2n}`.
    pub fn identity(n: usize) -> Result<Self> {
        let frame = DarbouxFrame::new(n)?;
        Ok(Self { matrix: DMatrix::identity(frame.dim(), frame.dim()), orientation_preserving: true })
    }

    /// Degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// Phase-space dimension `2n`.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// The underlying `2n×2n` matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Whether `det O = +1`.
    pub fn orientation_preserving(&self) -> bool {
        self.orientation_preserving
    }

    /// The inverse rotation (the transpose).
    pub fn transpose(&self) -> Rotation {
        Rotation { matrix: self.matrix.transpose(), orientation_preserving: self.orientation_preserving }
    }

    /// The product `self · other`.
    ///
    /// Panics if dimensions differ.
    pub fn compose(&self, other: &Rotation) -> Rotation {
        assert_eq!(self.dim(), other.dim(), "rotation dimensions differ");
        Rotation {
            matrix: &self.matrix * &other.matrix,
            orientation_preserving: self.orientation_preserving == other.orientation_preserving,
        }
    }
}

/// A linear complex structure: `J² = -I` and `JᵀJ = I` to tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructure {
    matrix: DMatrix<f64>,
}

impl ComplexStructure {
    /// Validates the defining identities at the default tolerance.
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(matrix, DEFAULT_TOL)
    }

    /// Validates `‖J² + I‖` and `‖JᵀJ - I‖` against an explicit tolerance.
    pub fn with_tolerance(matrix: DMatrix<f64>, tol: f64) -> Result<Self> {
        check_even_square(&matrix)?;
        let dim = matrix.nrows();
        let id = DMatrix::<f64>::identity(dim, dim);
        let square_defect = (&matrix * &matrix + &id).norm();
        let metric_defect = (matrix.transpose() * &matrix - &id).norm();
        let defect = square_defect.max(metric_defect);
        if defect > tol {
            return Err(Error::NotComplexStructure { defect, tol });
        }
        Ok(Self { matrix })
    }

    pub(crate) fn new_unchecked(matrix: DMatrix<f64>) -> Self {
        Self { matrix }
    }

    /// Degrees of freedom `n`.
    pub fn n(&self) -> usize {
        self.matrix.nrows() / 2
    }

    /// The underlying `2n×2n` matrix.
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// The opposite-orientation structure `-J`.
    pub fn negate(&self) -> ComplexStructure {
        ComplexStructure { matrix: -&self.matrix }
    }
}

/// The `(R, S)` blocks of a rotation in the `(z, z̄)` basis: the holomorphic
/// coordinates of the rotated axes are `wʲ = Σₘ Rʲₘ zᵐ + Sʲₘ z̄ᵐ`.
///
/// For any orthogonal rotation the blocks satisfy
///
/// ```text
/// R†R + Sᵀ S̄ = I          (metric preservation)
/// S†R + (S†R)ᵀ = 0        (the mixed terms cancel on symmetric products)
/// ```
///
/// which is what `ModeTransform::new` validates. Note that only the
/// symmetrization of `S†R` vanishes in general; the individual products are
/// nonzero for generic rotations and vanish exactly in the unitary (`S = 0`)
/// and antiunitary (`R = 0`) cases.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTransform {
    r: DMatrix<Complex64>,
    s: DMatrix<Complex64>,
}

impl ModeTransform {
    /// Validates the orthogonality identities at the default tolerance.
    pub fn new(r: DMatrix<Complex64>, s: DMatrix<Complex64>) -> Result<Self> {
        Self::with_tolerance(r, s, DEFAULT_TOL)
    }

    /// Validates the orthogonality identities at an explicit tolerance.
    pub fn with_tolerance(r: DMatrix<Complex64>, s: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if r.nrows() != r.ncols() || r.nrows() == 0 {
            return Err(Error::DimensionMismatch { expected: r.nrows(), actual: r.ncols() });
        }
        if s.shape() != r.shape() {
            return Err(Error::DimensionMismatch { expected: r.nrows(), actual: s.nrows() });
        }
        let n = r.nrows();
        let id = DMatrix::<Complex64>::identity(n, n);
        let metric_defect = (r.adjoint() * &r + s.transpose() * s.map(|z| z.conj()) - id).norm();
        let mixed = s.adjoint() * &r;
        let mixed_defect = (&mixed + mixed.transpose()).norm();
        let defect = metric_defect.max(mixed_defect);
        if defect > tol {
            return Err(Error::NotOrthogonalMixing { defect, tol });
        }
        Ok(Self { r, s })
    }

    pub(crate) fn new_unchecked(r: DMatrix<Complex64>, s: DMatrix<Complex64>) -> Self {
        Self { r, s }
    }

    /// Number of modes `n`.
    pub fn n(&self) -> usize {
        self.r.nrows()
    }

    /// The holomorphic mixing block `R`.
    pub fn r(&self) -> &DMatrix<Complex64> {
        &self.r
    }

    /// The antiholomorphic mixing block `S`.
    pub fn s(&self) -> &DMatrix<Complex64> {
        &self.s
    }
}

/// Real blocks `(A, B)` with `A + iB` unitary, the embedding data for
/// U(n) ⊂ SO(2n).
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryBlocks {
    a: DMatrix<f64>,
    b: DMatrix<f64>,
}

impl UnitaryBlocks {
    /// Validates `(A+iB)(A+iB)† = I` at the default tolerance.
    pub fn new(a: DMatrix<f64>, b: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(a, b, DEFAULT_TOL)
    }

    /// Validates unitarity at an explicit tolerance.
    pub fn with_tolerance(a: DMatrix<f64>, b: DMatrix<f64>, tol: f64) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() == 0 {
            return Err(Error::DimensionMismatch { expected: a.nrows(), actual: a.ncols() });
        }
        if b.shape() != a.shape() {
            return Err(Error::DimensionMismatch { expected: a.nrows(), actual: b.nrows() });
        }
        let n = a.nrows();
        let u = DMatrix::<Complex64>::from_fn(n, n, |i, j| Complex64::new(a[(i, j)], b[(i, j)]));
        let defect = (&u * u.adjoint() - DMatrix::<Complex64>::identity(n, n)).norm();
        if defect > tol {
            return Err(Error::NotUnitary { defect, tol });
        }
        Ok(Self { a, b })
    }

    /// Number of modes `n`.
    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// The real part `A`.
    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    /// The imaginary part `B`.
    pub fn b(&self) -> &DMatrix<f64> {
        &self.b
    }

    /// The complex matrix `A + iB`.
    pub fn to_complex(&self) -> DMatrix<Complex64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |i, j| Complex64::new(self.a[(i, j)], self.b[(i, j)]))
    }
}

/// The reference structure `J₀`, acting as `(q, p) ↦ (-p, q)`; block form
/// `[[0, -I], [I, 0]]`. For `n > 1` this is the n-fold product of the unique
/// single-mode structure.
pub fn standard_complex_structure(n: usize) -> Result<ComplexStructure> {
    let frame = DarbouxFrame::new(n)?;
    let mut m = DMatrix::<f64>::zeros(frame.dim(), frame.dim());
    for j in 0..n {
        m[(frame.q_index(j), frame.p_index(j))] = -1.0;
        m[(frame.p_index(j), frame.q_index(j))] = 1.0;
    }
    Ok(ComplexStructure::new_unchecked(m))
}

/// The complex structure `J = O J₀ Oᵀ` whose holomorphic coordinates are
/// adapted to the rotated axes (the columns of `O`).
///
/// Rotations in the embedded U(n) commute with `J₀` and leave it fixed;
/// everything else produces a genuinely different structure.
pub fn from_rotation(o: &Rotation) -> ComplexStructure {
    let j0 = standard_complex_structure(o.n()).expect("rotation dimension is validated");
    ComplexStructure::new_unchecked(o.matrix() * j0.matrix() * o.matrix().transpose())
}

/// Embeds `A + iB ∈ U(n)` into SO(2n) as the block matrix `[[A, B], [-B, A]]`.
pub fn embed_unitary(u: &UnitaryBlocks) -> Rotation {
    let n = u.n();
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = u.a[(i, j)];
            m[(i, n + j)] = u.b[(i, j)];
            m[(n + i, j)] = -u.b[(i, j)];
            m[(n + i, n + j)] = u.a[(i, j)];
        }
    }
    Rotation::new_unchecked(m)
}

/// Rewrites a rotation in the `(z, z̄)` basis and extracts the mixing blocks
/// `(R, S)` with `w = R z + S z̄`.
///
/// Concretely: the rotated coordinates of a point `v` are `Oᵀ v`, so the
/// stacked holomorphic coordinates transform by `T Oᵀ T†` with `T` the
/// unitary change of basis of [`holomorphic_basis`]; `R` and `S` are the two
/// upper blocks of that matrix. Unitarity of `T` is what guarantees the
/// orthogonality identities on `(R, S)` numerically.
pub fn rs_blocks(o: &Rotation) -> ModeTransform {
    let n = o.n();
    let t = holomorphic_basis(n).expect("rotation dimension is validated");
    let ot = o.matrix().transpose().map(|x| Complex64::new(x, 0.0));
    let conjugated = &t * ot * t.adjoint();
    let r = conjugated.view((0, 0), (n, n)).into_owned();
    let s = conjugated.view((0, n), (n, n)).into_owned();
    ModeTransform::new_unchecked(r, s)
}

/// The Frobenius norm of the `S` block of [`rs_blocks`]: zero exactly when
/// the rotation is biholomorphic, i.e. lies in the embedded U(n).
///
/// Proportional to the commutation defect: `‖O J₀ - J₀ O‖ = 2√2 ·
/// cauchy_riemann_defect(O)`.
pub fn cauchy_riemann_defect(o: &Rotation) -> f64 {
    rs_blocks(o).s().norm()
}

/// Frobenius distance between the matrices of two structures.
pub fn structure_distance(j1: &ComplexStructure, j2: &ComplexStructure) -> f64 {
    (j1.matrix() - j2.matrix()).norm()
}

/// Whether two rotations define the same complex structure, i.e. lie in the
/// same U(n) coset, decided by the distance `‖O₁J₀O₁ᵀ - O₂J₀O₂ᵀ‖` at the
/// default tolerance.
///
/// Panics if dimensions differ.
pub fn same_complex_structure(o1: &Rotation, o2: &Rotation) -> bool {
    same_complex_structure_with_tolerance(o1, o2, DEFAULT_TOL)
}

/// [`same_complex_structure`] with an explicit tolerance.
pub fn same_complex_structure_with_tolerance(o1: &Rotation, o2: &Rotation, tol: f64) -> bool {
    assert_eq!(o1.dim(), o2.dim(), "rotation dimensions differ");
    structure_distance(&from_rotation(o1), &from_rotation(o2)) < tol
}

/// Dimension of the space of tangent deformations of `J₀`: solutions of
/// `Xᵀ = -X`, `XJ₀ + J₀X = 0`, counted by numerical-rank analysis of the
/// corresponding linear system. Equals `n(n-1)`, the dimension of
/// SO(2n)/U(n).
pub fn moduli_tangent_dimension(n: usize) -> Result<usize> {
    moduli_tangent_dimension_with_cap(n, DEFAULT_MODULI_CAP)
}

/// [`moduli_tangent_dimension`] with an explicit cost cap on `n`.
pub fn moduli_tangent_dimension_with_cap(n: usize, cap: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    if n > cap {
        return Err(Error::ModuliCapExceeded { n, cap });
    }
    let dim = 2 * n;
    let j0 = standard_complex_structure(n)?;
    let j0m = j0.matrix();

    // Basis E_ab = e_a e_bᵀ - e_b e_aᵀ, a < b, of the antisymmetric matrices;
    // the anticommutator with J₀ is assembled column by column.
    let pairs: Vec<(usize, usize)> =
        (0..dim).flat_map(|a| (a + 1..dim).map(move |b| (a, b))).collect();
    let mut system = DMatrix::<f64>::zeros(dim * dim, pairs.len());
    for (col, &(a, b)) in pairs.iter().enumerate() {
        let mut e = DMatrix::<f64>::zeros(dim, dim);
        e[(a, b)] = 1.0;
        e[(b, a)] = -1.0;
        let image = &e * j0m + j0m * e;
        for (entry, value) in image.iter().enumerate() {
            system[(entry, col)] = *value;
        }
    }

    let singular_values = system.singular_values();
    let max = singular_values.max();
    let rank = if max == 0.0 {
        0
    } else {
        singular_values.iter().filter(|&&s| s > DEFAULT_RANK_REL_TOL * max).count()
    };
    Ok(pairs.len() - rank)
}

/// The symplectic form `ω_J(u, v) = 2 g(Ju, v)` induced by a structure,
/// normalized so that `J₀` reproduces the standard form exactly.
pub fn induced_symplectic_form(j: &ComplexStructure) -> SymplecticForm {
    let n = j.n();
    let g = standard_metric(n).expect("structure dimension is validated");
    let matrix = j.matrix().transpose() * (g.matrix() * 2.0);
    SymplecticForm::new_unchecked(n, matrix)
}

/// A Haar-distributed element of SO(2n), deterministic in the seed.
///
/// QR orthogonalization of a Gaussian matrix with the usual sign correction
/// on the diagonal of the triangular factor; the determinant is then fixed
/// to +1 by negating the first column if necessary, which preserves
/// uniformity on the special orthogonal group.
pub fn sample_rotation(n: usize, seed: u64) -> Result<Rotation> {
    let frame = DarbouxFrame::new(n)?;
    let dim = frame.dim();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let gaussian = DMatrix::<f64>::from_fn(dim, dim, |_, _| StandardNormal.sample(&mut rng));
    let qr = gaussian.qr();
    let r_diag = qr.r().diagonal();
    let q = qr.q();
    let signs = DVector::from_fn(dim, |i, _| if r_diag[i] < 0.0 { -1.0 } else { 1.0 });
    let mut o = q * DMatrix::from_diagonal(&signs);
    if o.clone().lu().determinant() < 0.0 {
        o.column_mut(0).neg_mut();
    }
    Ok(Rotation::new_unchecked(o))
}

/// A Haar-distributed element of U(n) as real blocks, deterministic in the
/// seed. Uses an RNG stream distinct from [`sample_rotation`]'s so the two
/// samplers are independent at equal seeds.
pub fn sample_unitary(n: usize, seed: u64) -> Result<UnitaryBlocks> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = DMatrix::<Complex64>::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re * scale, im * scale)
    });
    let qr = ginibre.qr();
    let r_diag = qr.r().diagonal();
    let q = qr.q();
    let phases = DVector::from_fn(n, |i, _| {
        let d = r_diag[i];
        if d.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { d / d.norm() }
    });
    let u = q * DMatrix::from_diagonal(&phases);
    Ok(UnitaryBlocks { a: u.map(|z| z.re), b: u.map(|z| z.im) })
}

/// Derives the seed for sample `index` from a base seed, so that each sample
/// in a seeded batch is reproducible in isolation. SplitMix64-style mixing.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
