//! Exact symbolic computation of first-order deformations of homogeneous
//! polynomial one-forms.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactalg`]: rational / Gaussian-rational scalars and sparse polynomials.
//! * [`extcalc`]: polynomial differential forms (`∧`, `d`, `i_X`).
//! * [`linalg`]: exact matrices and canonical echelon forms.
//! * [`foliations`]: rational, logarithmic and exact one-forms, integrating
//!   factors, genericity checks and the integration-lemma decomposition.
//! * [`deformation`]: kernels of `η ↦ ω∧dη + dω∧η` and of the relative
//!   cohomology operator, perturbation subspaces and decomposition checks.
//! * [`projective`]: projectivization, dehomogenization and descent.
//! * [`sampling`] and [`selfcheck`]: seeded random instances and identity
//!   suites over them.

pub mod error;
pub mod exactalg;
pub mod extcalc;
pub mod deformation;
pub mod foliations;
pub mod linalg;
pub mod projective;
pub mod sampling;
pub mod selfcheck;

pub use error::{Error, Result};
