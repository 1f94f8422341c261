//! Bound states of a particle in one or two attractive delta wells, in the
//! wave-function, Wigner and symplectic-tomogram pictures.
//!
//! Units are natural throughout (hbar = m = 1). The Wigner function follows
//! the convention `W(q, p) = int du exp(-ipu) psi*(q + u/2) psi(q - u/2)`,
//! without a `1 / (2 pi)` prefactor; phase-space measures carry the
//! `1 / (2 pi)` instead, so `int W dq dp / (2 pi) = 1`.

// Reference constants keep every digit they were tabulated with.
#![allow(clippy::excessive_precision)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod grid;
pub mod quadrature;
pub mod special;
pub mod states;
pub mod tomography;
pub mod transitions;
pub mod wigner;

pub use error::{Error, Result};
pub use quadrature::{Estimate, QuadratureSpec};
