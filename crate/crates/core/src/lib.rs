//! Numerical toolkit for linear complex structures on Darboux phase space.
//!
//! The crate makes one chain of ideas computable:
//!
//! * [`phase_space`] fixes the arena — `R^{2n}` in the ordering
//!   `(q¹…qⁿ, p₁…pₙ)` with the standard symplectic form, the Euclidean
//!   metric, and the holomorphic coordinates `zʲ = (qʲ + i pⱼ)/√2`.
//! * [`complex_structure`] builds complex structures `J = O J₀ Oᵀ` from
//!   rotations, splits rotations into holomorphic/antiholomorphic mixing
//!   blocks `(R, S)`, decides when two rotations define the same structure
//!   (the coset space SO(2n)/U(n)), and verifies the moduli dimension
//!   `n(n-1)` numerically.
//! * [`quantization`] realizes the canonical operators on truncated Fock
//!   spaces and measures how an observer using a rotated structure disagrees
//!   with the standard one: deformed mode commutators, vacuum residuals, and
//!   the number of standard quanta in the other observer's vacuum.
//! * [`generalized`] covers the pointwise layer of generalized complex
//!   data: type from Poisson rank, discretized regularity, the doubled
//!   moduli count, and classification against the Planck cone.
//!
//! All operations are pure functions on immutable values and safe to call
//! concurrently; samplers are deterministic in their explicit seed.
//!
//! ```
//! use darboux::{
//!     build_fock, cauchy_riemann_defect, commutator_matrix, observer_modes,
//!     rs_blocks, sample_rotation, vacuum_residual,
//! };
//!
//! // a generic rotation is not unitary: its observer sees deformed quanta
//! let rotation = sample_rotation(2, 7)?;
//! let defect = cauchy_riemann_defect(&rotation);
//! assert!(defect > 1e-3);
//!
//! let transform = rs_blocks(&rotation);
//! let (k, _l) = commutator_matrix(&transform);
//! assert!((&k - nalgebra::DMatrix::identity(2, 2)).norm() > 1e-3);
//!
//! // on a truncated Fock space the vacuum residual is exactly ‖S‖²
//! let fock = build_fock(2, 6)?;
//! let modes = observer_modes(&fock, &transform)?;
//! let vacuum = vacuum_residual(&fock, &modes)?;
//! assert!((vacuum.residual - defect * defect).abs() < 1e-9);
//! # Ok::<(), darboux::Error>(())
//! ```

pub mod complex_structure;
pub mod error;
pub mod generalized;
pub mod phase_space;
pub mod quantization;

pub use error::{Error, Result};

pub use phase_space::{
    hermitian_norm, holomorphic_basis, standard_metric, standard_symplectic, to_holomorphic,
    DarbouxFrame, Metric, SymplecticForm,
};

pub use complex_structure::{
    cauchy_riemann_defect, derive_seed, embed_unitary, from_rotation, induced_symplectic_form,
    moduli_tangent_dimension, moduli_tangent_dimension_with_cap, rs_blocks, same_complex_structure,
    same_complex_structure_with_tolerance, sample_rotation, sample_unitary,
    standard_complex_structure, structure_distance, ComplexStructure, ModeTransform, Rotation,
    UnitaryBlocks, DEFAULT_MODULI_CAP, DEFAULT_RANK_REL_TOL,
};

pub use quantization::{
    build_fock, build_fock_with_cap, commutator_matrix, number_expectation, observer_modes,
    quanta_disagreement, quanta_disagreement_with_threshold, vacuum_residual, FockRep,
    ObserverModes, VacuumSolution, DEFAULT_DIM_CAP, DEFAULT_VACUUM_THRESHOLD,
};

pub use generalized::{
    classify, detect_crossings, gcs_type, gcs_type_with_threshold, is_regular,
    is_regular_with_threshold, moduli_dimension_compact, moduli_dimension_generalized, parse_path,
    planck_form_matrix, planck_form_signature, planck_form_value, ConeClass, ConeSide,
    PlanckVector, PoissonBlock,
};

/// Default tolerance for boolean predicates and constructor validation.
///
/// Double-precision conjugations at the dimensions this crate targets keep
/// numerical defects near 1e-13, so 1e-8 separates them cleanly from genuine
/// violations.
pub const DEFAULT_TOL: f64 = 1e-8;
