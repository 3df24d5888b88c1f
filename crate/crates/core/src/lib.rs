//! Bound states of the D-dimensional Dirac equation with spin symmetry in a
//! modified Pöschl-Teller vector plus scalar well.
//!
//! The crate is `no_std` (with `alloc`) so the numerics can be embedded
//! anywhere; IO, file formats and the command line live in `diracpt`.
//!
//! * [`model`] physical parameters, quantum numbers and the dimensionless
//!   quantities ε, δ, γ.
//! * [`specfun`] log-gamma, Beta, Pochhammer, Jacobi polynomials and the
//!   terminating Gauss series.
//! * [`spectrum`] the transcendental energy condition and its roots.
//! * [`wavefunction`] upper and lower spinor components and their
//!   normalization.
//! * [`oracle`] an independent finite-difference eigensolver for the
//!   upper-component equation.
#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
mod math;

pub mod model;
pub mod oracle;
pub mod quadrature;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{DimensionlessState, Kappa, ModelParams, QuantumNumbers};
pub use spectrum::{ExistenceReport, SpectralPoint};
pub use wavefunction::{NormMethod, RadialFunction};
