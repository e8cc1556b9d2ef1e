//! The kernel integral
//!
//! ```text
//! Φ(ρ) = ∫_{-1}^{1} |t - (n-2)ρ/n| (1 - t²)^{(n-3)/2} / (1 - 2tρ + ρ²)^{(n-2)/2} dt
//! ```
//!
//! and its second derivative, each computed by several independent routes:
//! adaptive quadrature, a Gegenbauer series in powers of ρ, the closed form at
//! `n = 3`, and a hypergeometric closed form for `Φ''`.

mod psi;
mod verify;

use serde::Serialize;

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_jacobi, QuadratureResult, QuadratureSpec};
use crate::specfun::{abs_kernel_coefficient, gegenbauer_sequence, HypergeometricInput};
use crate::sum::CompensatedSum;

pub use psi::{psi, psi_parts, psi_prime_closed, psi_quadratic, technical_margin, varphi};
pub use verify::{verify_concavity, verify_monotone, verify_technical};

/// Below this radius the closed form of `Φ''` loses accuracy to cancellation
/// and [`phi_second`] switches to the series.
pub const SECOND_CLOSED_RHO_MIN: f64 = 1e-3;

/// Step of the second-difference oracle for `Φ''`.
pub const SECOND_FD_STEP: f64 = 1e-3;

/// Step of the first-difference estimate of `Φ'`.
pub const FIRST_FD_STEP: f64 = 1e-4;

/// Relative tolerance used for every `₂F₁` evaluation in this module.
pub(crate) const HYP_TOL: f64 = 1e-16;

/// How a [`PhiEvaluation`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiMethod {
    Quad,
    Series,
    Closed3,
    SecondClosed,
    SecondSeries,
    SecondFd,
}

impl PhiMethod {
    /// Whether the method evaluates `Φ` itself rather than `Φ''`.
    pub fn is_value(self) -> bool {
        matches!(
            self,
            PhiMethod::Quad | PhiMethod::Series | PhiMethod::Closed3
        )
    }
}

/// One evaluation of `Φ` or `Φ''` by one route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiEvaluation {
    pub n: Dimension,
    pub rho: f64,
    pub value: f64,
    pub method: PhiMethod,
    pub error_estimate: f64,
}

/// Abscissa `(n-2)ρ/n` of the kink of the Φ integrand.
pub fn kink(n: Dimension, rho: f64) -> f64 {
    let nf = n.as_f64();
    (nf - 2.0) * rho / nf
}

fn check_rho_closed(rho: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::domain(format!("ρ must lie in [0, 1], got {rho}")));
    }
    Ok(())
}

fn check_rho_open(rho: f64) -> Result<()> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::domain(format!("ρ must lie in [0, 1), got {rho}")));
    }
    Ok(())
}

/// The defining integral for any `n ≥ 2` and `ρ ∈ [-1, 1]`; Φ is even in ρ.
pub(crate) fn phi_integral(
    n: Dimension,
    rho: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(Error::domain(format!("ρ must lie in [-1, 1], got {rho}")));
    }
    let nf = n.as_f64();
    let s = kink(n, rho);
    let power = (nf - 2.0) / 2.0;
    let alpha = (nf - 3.0) / 2.0;
    let one_m_rho = 1.0 - rho;
    let integrand = move |t: f64| {
        // 1 - 2tρ + ρ², arranged to avoid cancellation as ρ, t → 1
        let d = one_m_rho * one_m_rho + 2.0 * rho * (1.0 - t);
        let num = (t - s).abs();
        if power == 0.0 {
            num
        } else {
            num / d.powf(power)
        }
    };
    integrate_jacobi(integrand, alpha, &spec.with_kinks([s]))
}

/// `Φ(ρ)` by adaptive quadrature, with the kink declared to the integrator.
pub fn phi_quad(n: Dimension, rho: f64, spec: &QuadratureSpec) -> Result<PhiEvaluation> {
    n.require_at_least(3, "phi_quad")?;
    check_rho_closed(rho)?;
    let r = phi_integral(n, rho, spec)?;
    Ok(PhiEvaluation {
        n,
        rho,
        value: r.value,
        method: PhiMethod::Quad,
        error_estimate: r.error_estimate,
    })
}

/// Default truncation degree for the series routes.
///
/// At least 200 (400 above ρ = 0.9), raised until the Gegenbauer envelope
/// `ρ^K K^{n/2}` of the omitted terms drops below `1e-17`.
pub fn default_truncation(n: Dimension, rho: f64) -> usize {
    let base = if rho <= 0.9 { 200 } else { 400 };
    if rho <= 0.0 {
        return base;
    }
    let growth = n.as_f64() / 2.0;
    let log_rho = rho.ln();
    let target = (1e-17f64).ln();
    let mut k = base;
    while k < 1_000_000 && (k as f64) * log_rho + growth * (k as f64).ln() > target {
        k += k / 8 + 1;
    }
    k
}

/// `Φ(ρ)` by its Gegenbauer expansion in powers of ρ, truncated at degree
/// `k_max`. Degrees 0 and 1 are integrals; the tail uses the closed form of
/// the absolute-value kernel coefficients. The magnitude of the first
/// omitted term is reported as the error estimate.
pub fn phi_series(n: Dimension, rho: f64, k_max: usize) -> Result<PhiEvaluation> {
    n.require_at_least(3, "phi_series")?;
    check_rho_open(rho)?;
    let nf = n.as_f64();
    let lambda = (nf - 2.0) / 2.0;
    let s = kink(n, rho);
    let spec = QuadratureSpec::default();

    let mut sum = CompensatedSum::new();
    sum.add(abs_kernel_coefficient(lambda, 0, s, &spec)?);
    if k_max >= 1 {
        sum.add(abs_kernel_coefficient(lambda, 1, s, &spec)? * rho);
    }

    let w = ((1.0 - s) * (1.0 + s)).powf((nf + 1.0) / 2.0);
    let gegen = gegenbauer_sequence((nf + 2.0) / 2.0, k_max.saturating_sub(1), s);
    let tail_term = |k: usize, c: f64| -> f64 {
        let kf = k as f64;
        2.0 * nf * (nf - 2.0) / (kf * (kf - 1.0) * (kf + nf - 2.0) * (kf + nf - 1.0))
            * w
            * c
            * rho.powi(k as i32)
    };
    for k in 2..=k_max {
        sum.add(tail_term(k, gegen[k - 2]));
    }
    let omitted = k_max + 1;
    let error_estimate = if omitted >= 2 {
        let c = crate::specfun::gegenbauer((nf + 2.0) / 2.0, omitted - 2, s)?;
        tail_term(omitted, c).abs()
    } else {
        (abs_kernel_coefficient(lambda, 1, s, &spec)? * rho).abs()
    };
    Ok(PhiEvaluation {
        n,
        rho,
        value: sum.value(),
        method: PhiMethod::Series,
        error_estimate,
    })
}

/// Closed form of `Φ` at `n = 3`:
/// `(2/3) [(1 + ρ²/3)^{3/2} - 1 + ρ²] / ρ²`.
pub fn phi3_closed(rho: f64) -> f64 {
    let u = rho * rho;
    if rho.abs() < 1e-4 {
        // even Taylor expansion about 0
        return 1.0 + u / 36.0 - u * u / 648.0 + u * u * u / 5184.0;
    }
    // (1 + u/3)^{3/2} - 1 without cancellation
    let excess = (1.5 * (u / 3.0).ln_1p()).exp_m1();
    2.0 / 3.0 * (excess + u) / u
}

/// `Φ''(ρ)` in closed form through `₂F₁(1, n/2; (n+1)/2; ·)`.
///
/// The formula has a removable singularity at ρ = 0; below
/// [`SECOND_CLOSED_RHO_MIN`] use [`phi_second_series`] or [`phi_second`].
pub fn phi_second_closed(n: Dimension, rho: f64) -> Result<PhiEvaluation> {
    n.require_at_least(3, "phi_second_closed")?;
    check_rho_closed(rho)?;
    if rho < SECOND_CLOSED_RHO_MIN {
        return Err(Error::domain(format!(
            "closed form of Φ'' needs ρ >= {SECOND_CLOSED_RHO_MIN}, got {rho}"
        )));
    }
    let nf = n.as_f64();
    let u = rho * rho;
    let a = 1.0 - (nf - 2.0) * (nf - 2.0) * u / (nf * nf);
    let b = 1.0 - (nf - 4.0) * u / nf;
    let z = u * a / b;
    let f = HypergeometricInput::new(1.0, nf / 2.0, (nf + 1.0) / 2.0, z).evaluate_with(HYP_TOL)?;
    let prefactor = 2.0 * (nf - 2.0) / u * a.powf((nf - 3.0) / 2.0) * b.powf(-nf / 2.0);
    let first = (1.0 - (nf - 2.0) * (nf - 3.0) * u / (nf * nf)) * b;
    let second = (1.0 - (nf - 2.0) * (nf - 3.0) * u / (nf * (nf - 1.0)))
        * a
        * (1.0 - (nf - 2.0) * u / nf)
        * f;
    let value = prefactor * (first - second);
    Ok(PhiEvaluation {
        n,
        rho,
        value,
        method: PhiMethod::SecondClosed,
        error_estimate: 8.0 * f64::EPSILON * prefactor.abs() * (first.abs() + second.abs()),
    })
}

/// `Φ''(ρ)` as the sum of three Gegenbauer series truncated at `k_max`.
pub fn phi_second_series(n: Dimension, rho: f64, k_max: usize) -> Result<PhiEvaluation> {
    n.require_at_least(3, "phi_second_series")?;
    check_rho_open(rho)?;
    let nf = n.as_f64();
    let s = kink(n, rho);
    let w = (1.0 - s) * (1.0 + s);
    let c1 = gegenbauer_sequence((nf - 2.0) / 2.0, k_max + 1, s);
    let c2 = gegenbauer_sequence(nf / 2.0, k_max + 1, s);
    let c3 = gegenbauer_sequence((nf + 2.0) / 2.0, k_max + 1, s);

    let pre1 = 2.0 * (nf - 2.0).powi(2) / (nf * nf) * w.powf((nf - 3.0) / 2.0);
    let pre2 = -4.0 * (nf - 2.0).powi(2) / (nf * (nf - 1.0)) * w.powf((nf - 1.0) / 2.0);
    let pre3 = 2.0 * (nf - 2.0) / (nf + 1.0) * w.powf((nf + 1.0) / 2.0);
    // (n-1)_k/(n)_k = (n-1)/(n+k-1),  (n)_k/(n+2)_k = n(n+1)/((n+k)(n+k+1))
    let term = |k: usize, rho_k: f64| -> f64 {
        let kf = k as f64;
        let t1 = pre1 * c1[k];
        let t2 = pre2 * (nf - 1.0) / (nf + kf - 1.0) * c2[k];
        let t3 = pre3 * nf * (nf + 1.0) / ((nf + kf) * (nf + kf + 1.0)) * c3[k];
        (t1 + t2 + t3) * rho_k
    };

    let mut sum = CompensatedSum::new();
    let mut rho_k = 1.0;
    for k in 0..=k_max {
        sum.add(term(k, rho_k));
        rho_k *= rho;
    }
    Ok(PhiEvaluation {
        n,
        rho,
        value: sum.value(),
        method: PhiMethod::SecondSeries,
        error_estimate: term(k_max + 1, rho_k).abs(),
    })
}

/// `Φ''(ρ)` from the closed form, or from the series below
/// [`SECOND_CLOSED_RHO_MIN`].
pub fn phi_second(n: Dimension, rho: f64) -> Result<PhiEvaluation> {
    if rho < SECOND_CLOSED_RHO_MIN {
        phi_second_series(n, rho, default_truncation(n, rho))
    } else {
        phi_second_closed(n, rho)
    }
}

/// Second central difference of the quadrature route with step
/// [`SECOND_FD_STEP`] and one Richardson extrapolation. Uses the evenness of
/// Φ near ρ = 0; requires `ρ + h ≤ 1`.
pub fn phi_second_fd(n: Dimension, rho: f64, spec: &QuadratureSpec) -> Result<PhiEvaluation> {
    n.require_at_least(3, "phi_second_fd")?;
    check_rho_closed(rho)?;
    let h = SECOND_FD_STEP;
    if rho + h > 1.0 {
        return Err(Error::domain(format!(
            "finite-difference stencil leaves [0, 1] at ρ = {rho}"
        )));
    }
    let at = |r: f64| phi_integral(n, r, spec).map(|q| q.value);
    let centre = at(rho)?;
    let second =
        |h: f64| -> Result<f64> { Ok((at(rho + h)? - 2.0 * centre + at(rho - h)?) / (h * h)) };
    let coarse = second(h)?;
    let fine = second(h / 2.0)?;
    Ok(PhiEvaluation {
        n,
        rho,
        value: (4.0 * fine - coarse) / 3.0,
        method: PhiMethod::SecondFd,
        error_estimate: (fine - coarse).abs() / 3.0,
    })
}

/// `Φ'(ρ)` by differences of the quadrature route: central where the
/// stencil fits in `[-1, 1]` (Φ is even), one-sided second order at ρ = 1.
pub fn phi_first_fd(n: Dimension, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    n.require_at_least(3, "phi_first_fd")?;
    check_rho_closed(rho)?;
    let h = FIRST_FD_STEP;
    let at = |r: f64| phi_integral(n, r, spec).map(|q| q.value);
    if rho + h <= 1.0 {
        Ok((at(rho + h)? - at(rho - h)?) / (2.0 * h))
    } else {
        Ok((3.0 * at(rho)? - 4.0 * at(rho - h)? + at(rho - 2.0 * h)?) / (2.0 * h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn quad_at_origin() {
        let spec = QuadratureSpec::default();
        assert_abs_diff_eq!(
            phi_quad(dim(4), 0.0, &spec).unwrap().value,
            2.0 / 3.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            phi_quad(dim(7), 0.0, &spec).unwrap().value,
            1.0 / 3.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn quad_matches_closed_form_at_three() {
        let spec = QuadratureSpec::default();
        for &rho in &[0.0, 0.25, 0.5, 0.9, 1.0] {
            let q = phi_quad(dim(3), rho, &spec).unwrap();
            assert_abs_diff_eq!(q.value, phi3_closed(rho), epsilon = 1e-10);
            assert_eq!(q.method, PhiMethod::Quad);
        }
    }

    #[test]
    fn closed3_values() {
        assert_eq!(phi3_closed(0.0), 1.0);
        assert_relative_eq!(
            phi3_closed(1.0),
            16.0 / (9.0 * 3f64.sqrt()),
            max_relative = 1e-15
        );
        let expect = 8.0 / 3.0 * ((13.0f64 / 12.0).powf(1.5) - 0.75);
        assert_relative_eq!(phi3_closed(0.5), expect, max_relative = 1e-14);
        // the two branches meet at the switch point
        assert_abs_diff_eq!(
            phi3_closed(1e-4 - 1e-12),
            phi3_closed(1e-4 + 1e-12),
            epsilon = 1e-15
        );
    }

    #[test]
    fn series_examples() {
        let spec = QuadratureSpec::default();
        assert_abs_diff_eq!(
            phi_series(dim(4), 0.0, 10).unwrap().value,
            2.0 / 3.0,
            epsilon = 1e-12
        );
        let s = phi_series(dim(5), 0.5, 200).unwrap();
        let q = phi_quad(dim(5), 0.5, &spec).unwrap();
        assert_abs_diff_eq!(s.value, q.value, epsilon = 1e-8);
        let s = phi_series(dim(3), 0.9, 400).unwrap();
        assert_abs_diff_eq!(s.value, phi3_closed(0.9), epsilon = 1e-8);
        assert!(s.error_estimate < 1e-8);
    }

    #[test]
    fn series_rejects_rho_one() {
        assert!(phi_series(dim(4), 1.0, 10).is_err());
        assert!(phi_second_series(dim(4), 1.0, 10).is_err());
    }

    #[test]
    fn second_series_at_origin() {
        // only k = 0 survives: 2(n-2)²/n² - 4(n-2)²/(n(n-1)) + 2(n-2)/(n+1)
        assert_relative_eq!(
            phi_second_series(dim(4), 0.0, 5).unwrap().value,
            -1.0 / 30.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            phi_second_series(dim(3), 0.0, 5).unwrap().value,
            1.0 / 18.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn origin_curvature_confirmed_by_differences() {
        // Φ''(0) = -1/30 at n = 4 is not stated anywhere; pin it with the oracle
        let fd = phi_second_fd(dim(4), 0.0, &QuadratureSpec::tight()).unwrap();
        assert_relative_eq!(fd.value, -1.0 / 30.0, max_relative = 1e-6);
    }

    #[test]
    fn second_closed_examples() {
        let tight = QuadratureSpec::tight();
        let c = phi_second_closed(dim(4), 0.5).unwrap();
        let fd = phi_second_fd(dim(4), 0.5, &tight).unwrap();
        assert_relative_eq!(c.value, fd.value, max_relative = 1e-6);
        assert!(phi_second_closed(dim(6), 0.9).unwrap().value < 0.0);
        let s = phi_second_series(dim(5), 0.3, 200).unwrap();
        assert_abs_diff_eq!(
            phi_second_closed(dim(5), 0.3).unwrap().value,
            s.value,
            epsilon = 1e-9
        );
        let s = phi_second_series(dim(5), 0.4, 300).unwrap();
        assert_abs_diff_eq!(
            phi_second_closed(dim(5), 0.4).unwrap().value,
            s.value,
            epsilon = 1e-9
        );
        assert!(phi_second_closed(dim(5), 1e-4).is_err());
    }

    #[test]
    fn closed_second_derivative_also_holds_at_three() {
        let tight = QuadratureSpec::tight();
        for &rho in &[0.2, 0.6, 0.9] {
            let c = phi_second_closed(dim(3), rho).unwrap();
            let fd = phi_second_fd(dim(3), rho, &tight).unwrap();
            assert_relative_eq!(c.value, fd.value, max_relative = 1e-6);
        }
    }

    #[test]
    fn routed_second_derivative_switches_to_series() {
        let small = phi_second(dim(6), 5e-4).unwrap();
        assert_eq!(small.method, PhiMethod::SecondSeries);
        let large = phi_second(dim(6), 0.5).unwrap();
        assert_eq!(large.method, PhiMethod::SecondClosed);
    }

    #[test]
    fn first_derivative_vanishes_at_origin() {
        let spec = QuadratureSpec::tight();
        for n in [3, 4, 9] {
            assert!(phi_first_fd(dim(n), 0.0, &spec).unwrap().abs() < 1e-9);
        }
        // at ρ = 1, n = 3 the integrand blows up like (1-t)^{-1/2}; the tight
        // tolerance is out of reach there
        let spec = QuadratureSpec::default();
        assert!(phi_first_fd(dim(3), 1.0, &spec).unwrap() > 0.0);
        assert!(phi_first_fd(dim(4), 1.0, &spec).unwrap() < 0.0);
    }

    #[test]
    fn truncation_grows_with_rho_and_dimension() {
        assert_eq!(default_truncation(dim(4), 0.0), 200);
        assert!(default_truncation(dim(4), 0.95) >= 400);
        assert!(default_truncation(dim(12), 0.9) > default_truncation(dim(4), 0.9));
    }

    #[test]
    fn dimension_lower_bounds() {
        let spec = QuadratureSpec::default();
        assert!(phi_quad(dim(2), 0.5, &spec).is_err());
        assert!(phi_quad(dim(4), 1.5, &spec).is_err());
        assert!(phi_second_closed(dim(2), 0.5).is_err());
    }
}
