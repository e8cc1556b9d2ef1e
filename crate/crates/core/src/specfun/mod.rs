//! Special functions: Γ, Pochhammer symbols, Gegenbauer polynomials, the
//! Gauss hypergeometric function and two Gegenbauer kernel identities.
//!
//! Everything here is a pure function of its arguments.

mod gamma;
mod gegenbauer;
mod hypergeometric;
mod identities;
mod kernel;

pub use gamma::gamma;
pub use gegenbauer::{gegenbauer, gegenbauer_sequence, GegenbauerSpec};
pub use hypergeometric::{
    hyp2f1, hyp2f1_euler, hyp2f1_series, HypergeometricInput, DEFAULT_REL_TOL, MAX_SERIES_TERMS,
};
pub use identities::{verify_identities, IdentityGrids};
pub use kernel::{
    abs_kernel_by_quadrature, abs_kernel_coefficient, gegenbauer_weighted_derivative,
};

/// Rising factorial `(λ)_k = λ(λ+1)···(λ+k-1)`, with `(λ)_0 = 1`.
pub fn pochhammer(lambda: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (lambda + f64::from(j)))
}
