//! Sharp Schwarz–Pick type gradient bounds for bounded harmonic functions on
//! the unit ball of `Rⁿ`, with independent numerical cross-checks.
//!
//! - [`specfun`]: Gamma, Gegenbauer polynomials, `₂F₁`, and the classical
//!   identities used downstream.
//! - [`quadrature`]: adaptive Gauss–Legendre with declared kinks and
//!   endpoint weights `(1 - t²)^α`.
//! - [`phi`]: the kernel integral Φ, its second derivative, and the sweeps
//!   checking monotonicity, concavity and the auxiliary inequality.
//! - [`bounds`]: sharp constants and the pointwise constant `C(x)`.
//! - [`harmonic`]: zonal Poisson integrals and random-data probes.
//! - [`cli`]: the `harmonic-schwarz` command.

// `!(x < y)` is used on purpose so that NaN inputs are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod dimension;
pub mod error;
pub mod harmonic;
pub mod phi;
pub mod quadrature;
pub mod report;
pub mod specfun;
mod sum;

pub use dimension::Dimension;
pub use error::{Error, Result};
