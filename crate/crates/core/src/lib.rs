//! Distillability of depolarized `d × d` bipartite states under the
//! reduction criterion.
//!
//! A state `ρ = p|ψ⟩⟨ψ| + (1-p)/d² I` with `|ψ⟩ = Σ a_i|ii⟩` is detected as
//! distillable when `ρ_A ⊗ I - ρ` has a negative eigenvalue. The crate
//! builds that matrix two ways ([`state`]), factors its characteristic
//! polynomial ([`charpoly`]), solves the `d = 3` case in closed form and
//! finds the minimum `p` for detection ([`analysis`], [`sweep`]). A cyclic
//! Jacobi eigensolver ([`linalg`]) referees every closed form.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod charpoly;
pub mod error;
pub mod linalg;
pub mod state;
pub mod sweep;

pub use analysis::{
    bisection_threshold_oracle, cubic3x3_roots, rc_check, threshold, Cubic3x3Roots, Method,
    RcVerdict, RootFamily, ThresholdMethod, ThresholdResult, DEFAULT_RC_TOL,
};
pub use charpoly::{
    eval_poly, full_spectrum_from_poly, maxent_poly, maxent_threshold, nontrivial_poly,
    rank_deficient_threshold, sym_coeffs_oracle, sym_coeffs_recursive, CharPoly, SymCoeffs,
};
pub use error::{Error, Result};
pub use linalg::{eigen_sym, eigen_sym_default, kron, partial_trace_b, Spectrum, SymMatrix};
pub use state::{f_d, DepolarizedState, SchmidtVector, StateFile};
pub use sweep::{sweep_3x3, sweep_3x3_sequential, SweepCell, SweepGrid};
