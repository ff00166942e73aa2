//! Multivariate traces of bosonic Gaussian states.
//!
//! A Gaussian state of `m` bosonic modes is fully determined by its mean
//! vector `X̄` (length `2m`) and covariance matrix `V` (`2m × 2m`, real
//! symmetric, `V + iΩ ⪰ 0`). This crate evaluates the multivariate trace
//! (Bargmann invariant)
//!
//! ```text
//! tr(ρ₁ ρ₂ ... ρₙ)
//! ```
//!
//! for an ordered tuple of such states directly from their means and
//! covariances, via a block-matrix determinant and a single linear solve —
//! no Fock-space representation of the states is ever built on this path.
//! An independent truncated Fock-space oracle ([`fock`]) and closed-form
//! special cases ([`regions`]) are provided to cross-validate the engine.
//!
//! # Quadrature convention
//!
//! **The vacuum covariance is the identity.** Quadratures are
//! `q = a + a†`, `p = −i(a − a†)`, so `[q, p] = 2i` and a coherent state
//! `|α⟩` has mean `(2 Re α, 2 Im α)`. Many CV libraries use `V_vac = I/2`
//! (ħ = 1 scaling); covariances from such libraries must be doubled before
//! use here.
//!
//! # Example
//!
//! ```
//! use bargmann::{bargmann_invariant, make_coherent};
//! use num_complex::Complex64;
//!
//! // tr(|α⟩⟨α| |−α⟩⟨−α|) = e^{−4|α|²}
//! let a = make_coherent(Complex64::new(0.5, 0.0));
//! let b = make_coherent(Complex64::new(-0.5, 0.0));
//! let result = bargmann_invariant(&[a, b]).unwrap();
//! assert!((result.value.re - (-1.0f64).exp()).abs() < 1e-12);
//! ```
//!
//! # Modules
//!
//! - [`state`] — state construction, validation, JSON specs
//! - [`symplectic`] — the symplectic form, symplectic spectra, random symplectics
//! - [`invariant`] — the trace engine and its special-case formulas
//! - [`fock`] — truncated Fock-space brute-force oracle
//! - [`regions`] — permissible-value region curves and membership tests
//! - [`quadrature`] — adaptive quadrature used by the Gaussian-integral check

pub mod fock;
pub mod invariant;
pub mod linalg;
pub mod quadrature;
pub mod regions;
pub mod state;
pub mod symplectic;

pub use invariant::{
    bargmann_invariant, overlap, sqrt_branch, trace_power_det, trace_power_symplectic,
    BlockMatrixM, EngineError, InvariantResult,
};
pub use state::{
    make_coherent, make_squeezed, make_squeezed_coherent, make_thermal, make_vacuum,
    random_state, GaussianState, StateError, StateSpec, ValidationReport, ValidationStatus,
};
pub use symplectic::{symplectic_eigenvalues, symplectic_form, SymplecticForm};
