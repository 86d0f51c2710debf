//! Probability-amplitude mechanics for two coupled spin-1/2 systems.
//!
//! The crate builds the direction-generalized triplet and singlet states
//! `[Ψ] = Σ χ(B) [η₁(B₁)] ⊗ [η₂(B₂)]`, the generalized single-subsystem
//! observables `[r⁽¹⁾]`, `[r⁽²⁾]`, and evaluates `⟨R⟩` both through the
//! matrix form and by summing outcome probabilities directly.
//!
//! Layout:
//! - [`kernel`]: spin-1/2 and spin-1 direction-change amplitudes, the
//!   ½⊗½ Clebsch-Gordan table and the composed `χ` coefficients.
//! - [`states`]: assembly of the four compound states and their limits.
//! - [`operators`]: 2×2 observable blocks for each subsystem.
//! - [`expectation`]: amplitudes, probabilities and both expectation routes.
//! - [`verify`]: the invariant suite behind `spinpair verify`.
//! - [`cli`]: configuration parsing and record output for the binary.

pub mod cli;
pub mod direction;
pub mod error;
pub mod expectation;
pub mod kernel;
pub mod linalg;
pub mod operators;
pub mod sampling;
pub mod states;
pub mod tolerance;
pub mod verify;

pub use direction::{CompoundLabel, Direction, SpinHalf, B_INDEX};
pub use error::{Error, Result};
pub use expectation::{
    amplitude_psi, chsh_value, expectation_matrix, expectation_oracle, outcome_probabilities,
    singlet_correlation, verify_basis_invariance, ExpectationReport, OutcomeProbabilities,
};
pub use kernel::{chi, clebsch_gordan_half_half, eta_from_z, xi_half, zeta_spin1};
pub use linalg::{FourByFour, FourVector, TwoByTwo, TwoVector, C64};
pub use operators::{
    operator_pair, r_matrix, spin_projection_operator, MeasurementSpec, OperatorPair,
    OutcomeValues,
};
pub use states::{assemble_state, gram_matrix, reduce_axis_aligned, StateAssembly, StateTerm};
pub use tolerance::Tolerances;
