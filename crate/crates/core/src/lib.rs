//! Exact finite-field group theory toolkit.
//!
//! The crate provides, in layers:
//!
//! - [`field`], [`poly`], [`matrix`], [`linalg`]: arithmetic in F_{ell^k},
//!   polynomial factorization, dense matrix algebra, characteristic
//!   polynomials and eigenvalues over splitting extensions;
//! - [`quadspace`]: quadratic spaces, reflections, the spinor norm and
//!   membership in the kernel subgroup Omega_n of SO_n;
//! - [`sympower`]: symmetric powers of 2x2 matrices and the
//!   geometric-progression eigenvalue obstruction;
//! - [`octonion`]: the split octonion algebra in Zorn matrix form, its
//!   automorphism (G2) membership test, derivations, and the invariant
//!   alternating 3-form separating G2 from Omega_7;
//! - [`classify`]: the subgroup-classification pipeline with
//!   machine-checkable witnesses;
//! - [`weights`]: weight-shape recognition and theorem applicability
//!   gating for automorphic weight data;
//! - [`formats`]: the JSON file formats shared with the CLI.

pub mod classify;
pub mod error;
pub mod field;
pub mod formats;
pub mod intfactor;
pub mod linalg;
pub mod matrix;
pub mod octonion;
pub mod poly;
pub mod quadspace;
pub mod rngutil;
pub mod sympower;
pub mod weights;

pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use matrix::SquareMatrix;
