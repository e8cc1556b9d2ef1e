//! The substitution `φ(t)`, the auxiliary function `Ψ`, its derivative, and
//! the two sides of the hypergeometric inequality behind the concavity of Φ.

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::specfun::HypergeometricInput;

use super::HYP_TOL;

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("t must lie in [0, 1], got {t}")));
    }
    Ok(())
}

fn f_at(n: f64, z: f64) -> Result<f64> {
    HypergeometricInput::new(1.0, n / 2.0, (n + 1.0) / 2.0, z).evaluate_with(HYP_TOL)
}

/// `φ(t) = t [1 - (n-2)² t / n²] / [1 - (n-4) t / n]`; `φ(1) = (n-1)/n`.
pub fn varphi(n: Dimension, t: f64) -> f64 {
    let nf = n.as_f64();
    t * (1.0 - (nf - 2.0).powi(2) * t / (nf * nf)) / (1.0 - (nf - 4.0) * t / nf)
}

/// The two terms `(A, B)` of `Ψ = A - B`:
/// `A = φ^{(n-1)/2} (1-φ)^{1/2} ₂F₁(1, n/2; (n+1)/2; φ)` and `B` the explicit
/// rational-power expression in `t`.
pub fn psi_parts(n: Dimension, t: f64) -> Result<(f64, f64)> {
    n.require_at_least(3, "psi")?;
    check_t(t)?;
    let nf = n.as_f64();
    let phi = varphi(n, t);
    let a = phi.powf((nf - 1.0) / 2.0) * (1.0 - phi).sqrt() * f_at(nf, phi)?;
    let num = t.powf((nf - 1.0) / 2.0)
        * (1.0 - (nf - 2.0).powi(2) * t / (nf * nf)).powf((nf - 3.0) / 2.0)
        * (1.0 - (nf - 2.0) * (nf - 3.0) * t / (nf * nf));
    let den = (1.0 - (nf - 4.0) * t / nf).powf((nf - 2.0) / 2.0)
        * (1.0 - (nf - 2.0) * (nf - 3.0) * t / (nf * (nf - 1.0)));
    Ok((a, num / den))
}

/// `Ψ(t)`, positive on `(0, 1]` for `n ≥ 4` and negative there for `n = 3`.
pub fn psi(n: Dimension, t: f64) -> Result<f64> {
    let (a, b) = psi_parts(n, t)?;
    Ok(a - b)
}

/// The quadratic
/// `Q_n(t) = n³(n²-3n-2) - 2n(n-2)(n-4)(n²-3n+1) t + (n-2)²(n-3)(n-4)² t²`.
///
/// Coefficients are formed in integer arithmetic.
pub fn psi_quadratic(n: Dimension, t: f64) -> f64 {
    let n = i128::from(n.get());
    let c0 = n.pow(3) * (n * n - 3 * n - 2);
    let c1 = -2 * n * (n - 2) * (n - 4) * (n * n - 3 * n + 1);
    let c2 = (n - 2).pow(2) * (n - 3) * (n - 4).pow(2);
    c0 as f64 + t * (c1 as f64 + t * c2 as f64)
}

/// `Ψ'(t)` in closed form:
/// `t^{(n-1)/2} / (2n⁵(n-1)) · (1-(n-4)t/n)^{-n/2} [1-(n-2)²t/n²]^{(n-5)/2}
///  [1-(n-2)(n-3)t/(n(n-1))]^{-2} · Q_n(t)`.
pub fn psi_prime_closed(n: Dimension, t: f64) -> Result<f64> {
    n.require_at_least(4, "psi_prime_closed")?;
    check_t(t)?;
    if t == 0.0 {
        return Err(Error::domain("psi_prime_closed needs t > 0"));
    }
    let nf = n.as_f64();
    let lead = t.powf((nf - 1.0) / 2.0) / (2.0 * nf.powi(5) * (nf - 1.0));
    let f1 = (1.0 - (nf - 4.0) * t / nf).powf(-nf / 2.0);
    let f2 = (1.0 - (nf - 2.0).powi(2) * t / (nf * nf)).powf((nf - 5.0) / 2.0);
    let f3 = (1.0 - (nf - 2.0) * (nf - 3.0) * t / (nf * (nf - 1.0))).powi(-2);
    Ok(lead * f1 * f2 * f3 * psi_quadratic(n, t))
}

/// Left side minus right side of
/// `₂F₁(1, n/2; (n+1)/2; φ(t)) ≥ (1-(n-4)t/n)(1-(n-2)(n-3)t/n²) /
///  [(1-(n-2)t/n)(1-(n-2)²t/n²)(1-(n-2)(n-3)t/(n(n-1)))]`.
pub fn technical_margin(n: Dimension, t: f64) -> Result<f64> {
    n.require_at_least(3, "technical_margin")?;
    check_t(t)?;
    let nf = n.as_f64();
    let lhs = f_at(nf, varphi(n, t))?;
    let num = (1.0 - (nf - 4.0) * t / nf) * (1.0 - (nf - 2.0) * (nf - 3.0) * t / (nf * nf));
    let den = (1.0 - (nf - 2.0) * t / nf)
        * (1.0 - (nf - 2.0).powi(2) * t / (nf * nf))
        * (1.0 - (nf - 2.0) * (nf - 3.0) * t / (nf * (nf - 1.0)));
    Ok(lhs - num / den)
}
