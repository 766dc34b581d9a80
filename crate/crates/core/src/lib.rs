//! Asymmetric 1→2 cloning of qubits and qutrits in the Weyl-operator
//! formalism.
//!
//! A cloner is an `N × N` amplitude matrix `a_{m,n}` over the error
//! operators `U_{m,n}`. Clone A suffers error `U_{m,n}` with probability
//! `|a_{m,n}|²`; clone B sees the Fourier-dual matrix `b_{m,n}`. The crate
//! simulates both clones, evaluates fidelities in every mutually unbiased
//! basis, and finds the optimal trade-off between the two copies for the
//! standard state-dependent families.
//!
//! ```
//! use qclone::cloner::clone_outputs_mixture;
//! use qclone::families::{FamilyParams, UniversalParams};
//! use qclone::hilbert::StateVector;
//!
//! let a = FamilyParams::Universal(UniversalParams::symmetric(3)).build()?;
//! let psi = StateVector::basis(3, 1);
//! let (f_a, f_b) = clone_outputs_mixture(&a, &psi)?.fidelities(&psi)?;
//! assert!((f_a - 0.75).abs() < 1e-12 && (f_b - 0.75).abs() < 1e-12);
//! # Ok::<(), qclone::Error>(())
//! ```

pub mod cloner;
pub mod error;
pub mod families;
pub mod hilbert;
pub mod mub;
pub mod optimizer;
pub mod weyl_bell;

pub use error::{Error, Result};
