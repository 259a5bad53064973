//! Canonical operators on truncated Fock spaces and the mode operators an
//! observer attaches to a rotated complex structure.
//!
//! States live in the occupation basis `|k₁…kₙ⟩` with every `kⱼ ≤ cutoff`,
//! ordered lexicographically in `(k₁, …, kₙ)` (mode 1 varies slowest). The
//! ladder operators carry the matrix elements `√(k+1)`, and `Q`, `P` are
//! reconstructed from them, so `Aʲ = (Qʲ + iPⱼ)/√2` holds as a matrix
//! identity.
//!
//! Truncation leaves its usual fingerprint: `[A, A⁺]` picks up the entry
//! `-cutoff` at the boundary occupation. Every commutator statement in this
//! module is therefore restricted to the *sub-cutoff subspace* — states with
//! all occupations strictly below the cutoff — where ladder products are
//! identical to their untruncated values and the canonical relations hold to
//! rounding error.
//!
//! An observer with mixing blocks `(R, S)` counts quanta with
//! `Bʲ = Σₘ Rʲₘ Aᵐ + Sʲₘ (Aᵐ)⁺`. Substituting the canonical relations gives
//! the closed-form commutators
//!
//! ```text
//! [Bʲ, (Bˡ)⁺] = (R R† - S S†)ⱼₗ        [Bʲ, Bˡ] = (R Sᵀ - S Rᵀ)ⱼₗ
//! ```
//!
//! which equal `δⱼₗ` and `0` exactly when `S = 0`: only biholomorphic
//! observers see canonical quanta. [`vacuum_residual`] measures whether the
//! observer possesses a vacuum at all (the smallest eigenvalue of
//! `Σⱼ (Bʲ)†Bʲ` on the sub-cutoff subspace), and [`quanta_disagreement`]
//! counts how many standard quanta that vacuum contains.
//!
//! A sharp consequence of metric compatibility is worth spelling out. For
//! blocks coming from a rotation, `R†S` is antisymmetric, so normal-ordering
//! `Σⱼ (Bʲ)†Bʲ` kills every anomalous pair term and leaves the operator
//! identity
//!
//! ```text
//! Σⱼ (Bʲ)†Bʲ = Σⱼ (Aʲ)†Aʲ + ‖S‖²_F · I
//! ```
//!
//! The residual therefore equals `‖S‖²_F` at every truncation, the optimal
//! vacuum candidate is the *standard* vacuum itself, and the disagreement
//! number is zero whenever it is defined at all. Unlike the symplectic
//! (canonical Bogoliubov) case, a rotation never produces a dressed vacuum:
//! the mismatch between observers sits entirely in the deformed commutators
//! `K`, `L` and in the residual floor `‖S‖²`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::complex_structure::ModeTransform;
use crate::error::{Error, Result};

/// Default cap on the truncated Fock dimension `(cutoff+1)ⁿ`.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// Default residual below which an observer is considered to possess a
/// vacuum at the current truncation.
pub const DEFAULT_VACUUM_THRESHOLD: f64 = 1e-6;

/// Truncated multi-mode Fock representation of `Q`, `P`, `A`, `A⁺`.
#[derive(Debug, Clone)]
pub struct FockRep {
    n: usize,
    cutoff: usize,
    dim: usize,
    a: Vec<DMatrix<Complex64>>,
    a_dag: Vec<DMatrix<Complex64>>,
    q: Vec<DMatrix<Complex64>>,
    p: Vec<DMatrix<Complex64>>,
}

impl FockRep {
    /// Number of modes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Maximal occupation per mode.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Hilbert-space dimension `(cutoff+1)ⁿ`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Annihilation operator of mode `j` (0-based).
    pub fn a(&self, j: usize) -> &DMatrix<Complex64> {
        &self.a[j]
    }

    /// Creation operator of mode `j` (0-based).
    pub fn a_dag(&self, j: usize) -> &DMatrix<Complex64> {
        &self.a_dag[j]
    }

    /// Position operator `Qʲ = (Aʲ + (Aʲ)⁺)/√2`.
    pub fn q(&self, j: usize) -> &DMatrix<Complex64> {
        &self.q[j]
    }

    /// Momentum operator `Pⱼ = -i(Aʲ - (Aʲ)⁺)/√2`.
    pub fn p(&self, j: usize) -> &DMatrix<Complex64> {
        &self.p[j]
    }

    /// Occupation numbers `(k₁, …, kₙ)` of basis state `index`.
    pub fn occupation(&self, index: usize) -> Vec<usize> {
        debug_assert!(index < self.dim);
        let d = self.cutoff + 1;
        let mut rem = index;
        let mut occ = vec![0usize; self.n];
        for j in (0..self.n).rev() {
            occ[j] = rem % d;
            rem /= d;
        }
        occ
    }

    /// Basis index of the state with the given occupation numbers.
    pub fn index_of(&self, occupation: &[usize]) -> Result<usize> {
        if occupation.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, actual: occupation.len() });
        }
        let d = self.cutoff + 1;
        let mut index = 0usize;
        for &k in occupation {
            if k > self.cutoff {
                return Err(Error::DimensionMismatch { expected: self.cutoff, actual: k });
            }
            index = index * d + k;
        }
        Ok(index)
    }

    /// Indices of the sub-cutoff subspace: all occupations strictly below
    /// the cutoff.
    pub fn sub_cutoff_indices(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|&i| self.occupation(i).iter().all(|&k| k < self.cutoff))
            .collect()
    }

    /// The ground state `|0…0⟩`.
    pub fn vacuum(&self) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.dim);
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    /// The total number operator `Σⱼ (Aʲ)⁺Aʲ`.
    pub fn number_operator(&self) -> DMatrix<Complex64> {
        let mut num = DMatrix::zeros(self.dim, self.dim);
        for j in 0..self.n {
            num += &self.a_dag[j] * &self.a[j];
        }
        num
    }
}

/// Builds the truncated representation with the default dimension cap.
pub fn build_fock(n: usize, cutoff: usize) -> Result<FockRep> {
    build_fock_with_cap(n, cutoff, DEFAULT_DIM_CAP)
}

/// Builds the truncated representation, rejecting dimensions above `cap`.
pub fn build_fock_with_cap(n: usize, cutoff: usize, cap: usize) -> Result<FockRep> {
    if n == 0 {
        return Err(Error::ZeroModes);
    }
    if cutoff == 0 {
        return Err(Error::ZeroCutoff);
    }
    let d = cutoff + 1;
    let dim_wide = (d as u128).pow(n as u32);
    if dim_wide > cap as u128 {
        let dim = dim_wide.min(usize::MAX as u128) as usize;
        return Err(Error::FockDimensionCap { dim, cap });
    }
    let dim = dim_wide as usize;

    let ladder = single_mode_ladder(cutoff);
    let ladder_dag = ladder.adjoint();
    let mut a = Vec::with_capacity(n);
    let mut a_dag = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    let mut p = Vec::with_capacity(n);
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let minus_i_inv_sqrt2 = Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2);
    for j in 0..n {
        let aj = embed_single_mode(&ladder, n, j, d);
        let aj_dag = embed_single_mode(&ladder_dag, n, j, d);
        q.push((&aj + &aj_dag) * inv_sqrt2);
        p.push((&aj - &aj_dag) * minus_i_inv_sqrt2);
        a.push(aj);
        a_dag.push(aj_dag);
    }
    Ok(FockRep { n, cutoff, dim, a, a_dag, q, p })
}

/// Single-mode annihilation matrix: `⟨k|a|k+1⟩ = √(k+1)`.
fn single_mode_ladder(cutoff: usize) -> DMatrix<Complex64> {
    let d = cutoff + 1;
    DMatrix::from_fn(d, d, |r, c| {
        if c == r + 1 {
            Complex64::new((c as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Places a single-mode operator on tensor factor `j` of `n`, identity
/// elsewhere. Factor 0 is the slowest index, matching the lexicographic
/// basis order.
fn embed_single_mode(op: &DMatrix<Complex64>, n: usize, j: usize, d: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::<Complex64>::identity(1, 1);
    for m in 0..n {
        if m == j {
            out = out.kronecker(op);
        } else {
            out = out.kronecker(&DMatrix::<Complex64>::identity(d, d));
        }
    }
    out
}

/// The mode operators `Bʲ = Σₘ Rʲₘ Aᵐ + Sʲₘ (Aᵐ)⁺` of an observer with
/// mixing blocks `(R, S)`, as explicit matrices on the same truncation.
#[derive(Debug, Clone)]
pub struct ObserverModes {
    transform: ModeTransform,
    modes: Vec<DMatrix<Complex64>>,
    dim: usize,
}

impl ObserverModes {
    /// Number of modes.
    pub fn n(&self) -> usize {
        self.modes.len()
    }

    /// Hilbert-space dimension of the underlying truncation.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The mixing blocks this observer was built from.
    pub fn transform(&self) -> &ModeTransform {
        &self.transform
    }

    /// Mode operator `Bʲ` (0-based).
    pub fn mode(&self, j: usize) -> &DMatrix<Complex64> {
        &self.modes[j]
    }
}

/// Realizes an observer's mode operators on a truncated Fock space.
pub fn observer_modes(f: &FockRep, t: &ModeTransform) -> Result<ObserverModes> {
    if t.n() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.n(), actual: t.n() });
    }
    let n = f.n();
    let mut modes = Vec::with_capacity(n);
    for j in 0..n {
        let mut b = DMatrix::<Complex64>::zeros(f.dim(), f.dim());
        for m in 0..n {
            b += f.a(m) * t.r()[(j, m)];
            b += f.a_dag(m) * t.s()[(j, m)];
        }
        modes.push(b);
    }
    Ok(ObserverModes { transform: t.clone(), modes, dim: f.dim() })
}

/// Closed-form mode commutators of an observer:
/// `K = [Bʲ, (Bˡ)⁺] = R R† - S S†` and `L = [Bʲ, Bˡ] = R Sᵀ - S Rᵀ`.
///
/// `K = I` and `L = 0` exactly when `S = 0`; a nonzero `S` deforms the
/// canonical algebra, which is the algebraic face of two observers
/// disagreeing about what an elementary quantum is.
pub fn commutator_matrix(t: &ModeTransform) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let k = t.r() * t.r().adjoint() - t.s() * t.s().adjoint();
    let l = t.r() * t.s().transpose() - t.s() * t.r().transpose();
    (k, l)
}

/// The best vacuum candidate an observer has at this truncation.
#[derive(Debug, Clone)]
pub struct VacuumSolution {
    /// Smallest eigenvalue of `Σⱼ (Bʲ)†Bʲ` on the sub-cutoff subspace, i.e.
    /// the minimum of `Σⱼ ‖Bʲψ‖²` over unit states supported there.
    pub residual: f64,
    /// The minimizing state, embedded in the full truncated space. Zero iff
    /// the residual is zero in exact arithmetic.
    pub state: DVector<Complex64>,
}

/// Minimizes `Σⱼ ‖Bʲψ‖²` over unit vectors supported on the sub-cutoff
/// subspace.
///
/// Restricting to sub-cutoff support makes the quadratic form free of
/// truncation artifacts: raising a sub-cutoff state stays inside the
/// truncation. A residual near zero means the observer possesses a vacuum —
/// a state with no quanta in its own counting; a residual bounded away from
/// zero as the cutoff grows signals that no such state exists at all.
pub fn vacuum_residual(f: &FockRep, o: &ObserverModes) -> Result<VacuumSolution> {
    if o.dim() != f.dim() || o.n() != f.n() {
        return Err(Error::DimensionMismatch { expected: f.dim(), actual: o.dim() });
    }
    let mut m = DMatrix::<Complex64>::zeros(f.dim(), f.dim());
    for j in 0..f.n() {
        m += o.mode(j).adjoint() * o.mode(j);
    }
    // symmetrize away rounding before the Hermitian eigensolve
    let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);

    let sub = f.sub_cutoff_indices();
    let m_sub = DMatrix::<Complex64>::from_fn(sub.len(), sub.len(), |r, c| m[(sub[r], sub[c])]);
    let eigen = m_sub.symmetric_eigen();
    let mut arg_min = 0;
    for i in 1..eigen.eigenvalues.len() {
        if eigen.eigenvalues[i] < eigen.eigenvalues[arg_min] {
            arg_min = i;
        }
    }
    let residual = eigen.eigenvalues[arg_min].max(0.0);
    let vector = eigen.eigenvectors.column(arg_min);

    // canonical global phase: largest component real and positive
    let mut pivot = 0;
    for i in 1..vector.len() {
        if vector[i].norm_sqr() > vector[pivot].norm_sqr() {
            pivot = i;
        }
    }
    let phase = if vector[pivot].norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        vector[pivot].conj() / vector[pivot].norm()
    };

    let mut state = DVector::<Complex64>::zeros(f.dim());
    for (slot, &full_index) in sub.iter().enumerate() {
        state[full_index] = vector[slot] * phase;
    }
    Ok(VacuumSolution { residual, state })
}

/// Expected number of standard quanta `⟨ψ| Σⱼ (Aʲ)⁺Aʲ |ψ⟩` in a state.
pub fn number_expectation(f: &FockRep, state: &DVector<Complex64>) -> Result<f64> {
    if state.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), actual: state.len() });
    }
    Ok((0..f.n()).map(|j| (f.a(j) * state).norm_squared()).sum())
}

/// Number of standard quanta contained in the observer's vacuum, using the
/// default residual threshold.
///
/// Zero exactly when the observers share the vacuum; errors with
/// [`Error::NoVacuum`] when the observer has no vacuum at this truncation.
pub fn quanta_disagreement(f: &FockRep, o: &ObserverModes) -> Result<f64> {
    quanta_disagreement_with_threshold(f, o, DEFAULT_VACUUM_THRESHOLD)
}

/// [`quanta_disagreement`] with an explicit residual threshold.
pub fn quanta_disagreement_with_threshold(
    f: &FockRep,
    o: &ObserverModes,
    threshold: f64,
) -> Result<f64> {
    let vacuum = vacuum_residual(f, o)?;
    if vacuum.residual > threshold {
        return Err(Error::NoVacuum { residual: vacuum.residual, threshold });
    }
    number_expectation(f, &vacuum.state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_structure::{rs_blocks, sample_unitary, embed_unitary};
    use nalgebra::DVector;

    fn identity_transform(n: usize) -> ModeTransform {
        ModeTransform::new(DMatrix::identity(n, n), DMatrix::zeros(n, n)).unwrap()
    }

    fn pi_transform(n: usize) -> ModeTransform {
        ModeTransform::new(DMatrix::zeros(n, n), -DMatrix::<Complex64>::identity(n, n)).unwrap()
    }

    /// Commutator of two operators restricted to a subspace given by indices.
    fn restricted_commutator(
        x: &DMatrix<Complex64>,
        y: &DMatrix<Complex64>,
        indices: &[usize],
    ) -> DMatrix<Complex64> {
        let full = x * y - y * x;
        DMatrix::from_fn(indices.len(), indices.len(), |r, c| full[(indices[r], indices[c])])
    }

    #[test]
    fn ladder_matrix_elements() {
        let f = build_fock(1, 3).unwrap();
        assert_eq!(f.dim(), 4);
        assert_eq!(f.a(0)[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(f.a(0)[(1, 2)], Complex64::new(2f64.sqrt(), 0.0));
        assert_eq!(f.a(0)[(2, 3)], Complex64::new(3f64.sqrt(), 0.0));
        assert_eq!(f.a(0)[(3, 3)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn ladder_commutator_has_the_known_boundary_artifact() {
        let f = build_fock(1, 3).unwrap();
        let comm = f.a(0) * f.a_dag(0) - f.a_dag(0) * f.a(0);
        for k in 0..3 {
            assert!((comm[(k, k)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
        assert!((comm[(3, 3)] - Complex64::new(-3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn canonical_commutator_on_sub_cutoff() {
        let f = build_fock(1, 3).unwrap();
        let sub = f.sub_cutoff_indices();
        assert_eq!(sub, vec![0, 1, 2]);
        let qp = restricted_commutator(f.q(0), f.p(0), &sub);
        let expected = DMatrix::<Complex64>::identity(3, 3) * Complex64::new(0.0, 1.0);
        assert!((qp - expected).norm() < 1e-13);
    }

    #[test]
    fn cross_mode_commutators_vanish_exactly() {
        let f = build_fock(2, 2).unwrap();
        let comm = f.a(0) * f.a_dag(1) - f.a_dag(1) * f.a(0);
        assert_eq!(comm.norm(), 0.0);
    }

    #[test]
    fn eq6_reconstruction_holds() {
        let f = build_fock(2, 3).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for j in 0..2 {
            let a_rebuilt = (f.q(j) + f.p(j) * i) * inv_sqrt2;
            assert!((a_rebuilt - f.a(j)).norm() < 1e-13);
            let adag_rebuilt = (f.q(j) - f.p(j) * i) * inv_sqrt2;
            assert!((adag_rebuilt - f.a_dag(j)).norm() < 1e-13);
            // hermiticity
            assert!((f.q(j).adjoint() - f.q(j)).norm() == 0.0);
            assert!((f.p(j).adjoint() - f.p(j)).norm() == 0.0);
        }
    }

    #[test]
    fn dimension_cap_is_enforced() {
        assert!(matches!(
            build_fock_with_cap(2, 7, 60),
            Err(Error::FockDimensionCap { dim: 64, cap: 60 })
        ));
        assert!(build_fock_with_cap(1, 3, 4).is_ok());
        assert!(matches!(build_fock_with_cap(1, 4, 4), Err(Error::FockDimensionCap { .. })));
        assert!(matches!(build_fock(0, 2), Err(Error::ZeroModes)));
        assert!(matches!(build_fock(1, 0), Err(Error::ZeroCutoff)));
    }

    #[test]
    fn occupation_indexing_round_trips() {
        let f = build_fock(2, 2).unwrap();
        assert_eq!(f.occupation(0), vec![0, 0]);
        assert_eq!(f.occupation(1), vec![0, 1]);
        assert_eq!(f.occupation(3), vec![1, 0]);
        for idx in 0..f.dim() {
            assert_eq!(f.index_of(&f.occupation(idx)).unwrap(), idx);
        }
        assert!(f.index_of(&[0, 3]).is_err());
        assert!(f.index_of(&[0]).is_err());
    }

    #[test]
    fn identity_observer_reproduces_the_ladder() {
        let f = build_fock(2, 3).unwrap();
        let o = observer_modes(&f, &identity_transform(2)).unwrap();
        for j in 0..2 {
            assert_eq!(o.mode(j), f.a(j));
        }
    }

    #[test]
    fn pi_observer_swaps_creation_and_annihilation() {
        let f = build_fock(2, 3).unwrap();
        let o = observer_modes(&f, &pi_transform(2)).unwrap();
        for j in 0..2 {
            assert_eq!(o.mode(j), &(-f.a_dag(j)));
        }
    }

    #[test]
    fn observer_modes_rejects_mismatched_transform() {
        let f = build_fock(2, 2).unwrap();
        let t = identity_transform(1);
        assert!(matches!(observer_modes(&f, &t), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn commutator_matrix_examples() {
        let (k, l) = commutator_matrix(&identity_transform(2));
        assert_eq!(k, DMatrix::<Complex64>::identity(2, 2));
        assert_eq!(l.norm(), 0.0);

        let (k, l) = commutator_matrix(&pi_transform(2));
        assert!((k + DMatrix::<Complex64>::identity(2, 2)).norm() < 1e-15);
        assert!(l.norm() < 1e-15);
    }

    #[test]
    fn closed_form_commutators_match_fock_oracle() {
        let f = build_fock(2, 6).unwrap();
        let sub = f.sub_cutoff_indices();
        for seed in [3u64, 17] {
            let rot = crate::complex_structure::sample_rotation(2, seed).unwrap();
            let t = rs_blocks(&rot);
            let o = observer_modes(&f, &t).unwrap();
            let (k, l) = commutator_matrix(&t);
            for j in 0..2 {
                for m in 0..2 {
                    let kc = restricted_commutator(o.mode(j), &o.mode(m).adjoint(), &sub);
                    let expected_k =
                        DMatrix::<Complex64>::identity(sub.len(), sub.len()) * k[(j, m)];
                    assert!((kc - expected_k).norm() < 1e-10, "K defect at seed {seed}");

                    let lc = restricted_commutator(o.mode(j), o.mode(m), &sub);
                    let expected_l =
                        DMatrix::<Complex64>::identity(sub.len(), sub.len()) * l[(j, m)];
                    assert!((lc - expected_l).norm() < 1e-10, "L defect at seed {seed}");
                }
            }
        }
    }

    #[test]
    fn commutator_deformation_tracks_the_cr_defect() {
        for seed in 0..10u64 {
            let rot = crate::complex_structure::sample_rotation(3, seed).unwrap();
            let t = rs_blocks(&rot);
            let (k, l) = commutator_matrix(&t);

            // K is Hermitian, L antisymmetric
            assert!((k.adjoint() - &k).norm() < 1e-13, "seed {seed}");
            assert!((l.transpose() + &l).norm() < 1e-13, "seed {seed}");

            // K - I = -2SS† and L = 2RSᵀ pin the deformation to the defect:
            // zero defect means canonical commutators and conversely
            let k_dev = (&k - DMatrix::<Complex64>::identity(3, 3)).norm();
            let two_ss = (t.s() * t.s().adjoint()) * Complex64::new(2.0, 0.0);
            assert!((&k + two_ss - DMatrix::<Complex64>::identity(3, 3)).norm() < 1e-13);
            let two_rst = (t.r() * t.s().transpose()) * Complex64::new(2.0, 0.0);
            assert!((&l - two_rst).norm() < 1e-13);

            let defect = t.s().norm();
            assert!(k_dev <= 2.0 * defect * defect + 1e-12, "seed {seed}");
            assert!(
                k_dev >= 2.0 * defect * defect / 3f64.sqrt() - 1e-12,
                "seed {seed}: K cannot stay canonical with a nonzero defect"
            );
        }
    }

    #[test]
    fn standard_observer_has_the_standard_vacuum() {
        let f = build_fock(2, 4).unwrap();
        let o = observer_modes(&f, &identity_transform(2)).unwrap();
        let vac = vacuum_residual(&f, &o).unwrap();
        assert!(vac.residual < 1e-12);
        assert!((vac.state[0].norm() - 1.0).abs() < 1e-10);
        assert_eq!(quanta_disagreement(&f, &o).unwrap(), 0.0);
    }

    #[test]
    fn embedded_unitary_observers_share_the_vacuum() {
        let f = build_fock(2, 4).unwrap();
        for seed in 0..5 {
            let u = sample_unitary(2, seed).unwrap();
            let t = rs_blocks(&embed_unitary(&u));
            let o = observer_modes(&f, &t).unwrap();
            let vac = vacuum_residual(&f, &o).unwrap();
            assert!(vac.residual < 1e-12, "seed {seed}: residual {}", vac.residual);
            assert!((vac.state[0].norm() - 1.0).abs() < 1e-8, "seed {seed}");
            let disagreement = quanta_disagreement(&f, &o).unwrap();
            assert!(disagreement < 1e-9, "seed {seed}: disagreement {disagreement}");
        }
    }

    #[test]
    fn pi_observer_has_no_vacuum() {
        for cutoff in [4usize, 6, 8] {
            let f = build_fock(2, cutoff).unwrap();
            let o = observer_modes(&f, &pi_transform(2)).unwrap();
            let vac = vacuum_residual(&f, &o).unwrap();
            // Σⱼ Aʲ(Aʲ)⁺ has spectrum k₁+k₂+2 on the sub-cutoff subspace
            assert!(vac.residual >= 1.0);
            assert!((vac.residual - 2.0).abs() < 1e-9);
            assert!(matches!(
                quanta_disagreement(&f, &o),
                Err(Error::NoVacuum { .. })
            ));
        }
    }

    #[test]
    fn small_mixing_observer_keeps_the_standard_vacuum() {
        // near-identity rotation via the Cayley transform of a small
        // antisymmetric generator: orthogonal, det +1, small S block
        let eps = 1e-3;
        let dim = 4;
        let mut x = DMatrix::<f64>::zeros(dim, dim);
        let entries = [(0usize, 1usize, 0.7), (0, 2, -0.4), (0, 3, 0.9), (1, 2, 0.3), (1, 3, -0.8), (2, 3, 0.5)];
        for &(a, b, v) in &entries {
            x[(a, b)] = eps * v;
            x[(b, a)] = -eps * v;
        }
        let id = DMatrix::<f64>::identity(dim, dim);
        let cayley = (&id - &x * 0.5).try_inverse().unwrap() * (&id + &x * 0.5);
        let rot = crate::complex_structure::Rotation::new(cayley).unwrap();
        let t = rs_blocks(&rot);
        let s_sq = t.s().norm_squared();
        assert!(s_sq > 0.0 && s_sq < DEFAULT_VACUUM_THRESHOLD);

        // Σⱼ(Bʲ)†Bʲ = N + ‖S‖²·I, so the best vacuum candidate is the
        // standard vacuum itself, the residual is the cutoff-independent
        // floor ‖S‖², and the vacuum contains no standard quanta.
        let mut values = Vec::new();
        for cutoff in [8usize, 10] {
            let f = build_fock(2, cutoff).unwrap();
            let o = observer_modes(&f, &t).unwrap();
            let vac = vacuum_residual(&f, &o).unwrap();
            assert!((vac.residual - s_sq).abs() < 1e-12, "cutoff {cutoff}");
            assert!((vac.state[0].norm() - 1.0).abs() < 1e-10, "cutoff {cutoff}");
            let d = quanta_disagreement(&f, &o).unwrap();
            assert!(d < 1e-12, "cutoff {cutoff}: disagreement {d}");
            values.push(d);
        }
        assert!((values[0] - values[1]).abs() <= 1e-3, "cutoff drift {values:?}");
    }

    #[test]
    fn residual_equals_squared_mixing_norm_for_sampled_rotations() {
        let f = build_fock(2, 5).unwrap();
        for seed in 0..6 {
            let rot = crate::complex_structure::sample_rotation(2, seed).unwrap();
            let t = rs_blocks(&rot);
            let o = observer_modes(&f, &t).unwrap();
            let vac = vacuum_residual(&f, &o).unwrap();
            assert!(
                (vac.residual - t.s().norm_squared()).abs() < 1e-9,
                "seed {seed}: residual {} vs ‖S‖² {}",
                vac.residual,
                t.s().norm_squared()
            );
            assert!((vac.state[0].norm() - 1.0).abs() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn vacuum_residual_rejects_foreign_observer() {
        let f4 = build_fock(2, 4).unwrap();
        let f6 = build_fock(2, 6).unwrap();
        let o = observer_modes(&f6, &identity_transform(2)).unwrap();
        assert!(matches!(vacuum_residual(&f4, &o), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn number_expectation_counts_quanta() {
        let f = build_fock(2, 3).unwrap();
        let mut state = DVector::<Complex64>::zeros(f.dim());
        state[f.index_of(&[2, 1]).unwrap()] = Complex64::new(1.0, 0.0);
        let count = number_expectation(&f, &state).unwrap();
        assert!((count - 3.0).abs() < 1e-12);
    }
}
