//! Two identities for Gegenbauer polynomials against their orthogonality
//! weight `(1 - x²)^{λ - 1/2}`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_jacobi, QuadratureSpec};
use crate::specfun::gegenbauer::gegenbauer_unchecked;

fn check_abs_kernel_args(lambda: f64, s: f64) -> Result<()> {
    if !(lambda > -0.5) {
        return Err(Error::domain(format!("λ must exceed -1/2, got {lambda}")));
    }
    if !(s.abs() < 1.0) {
        return Err(Error::domain(format!(
            "kink s must lie in (-1, 1), got {s}"
        )));
    }
    Ok(())
}

/// `∫_{-1}^{1} |x - s| (1 - x²)^{λ-1/2} C_k^λ(x) dx`.
///
/// For `k ≥ 2` this is
/// `8λ(λ+1) / (k(k-1)(k+2λ)(k+2λ+1)) · (1 - s²)^{λ+3/2} C_{k-2}^{λ+2}(s)`;
/// the degrees 0 and 1 are integrated numerically.
pub fn abs_kernel_coefficient(lambda: f64, k: usize, s: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_abs_kernel_args(lambda, s)?;
    if k < 2 {
        return abs_kernel_by_quadrature(lambda, k, s, spec);
    }
    let kf = k as f64;
    let two_l = 2.0 * lambda;
    let coef =
        8.0 * lambda * (lambda + 1.0) / (kf * (kf - 1.0) * (kf + two_l) * (kf + two_l + 1.0));
    let w = (1.0 - s) * (1.0 + s);
    Ok(coef * w.powf(lambda + 1.5) * gegenbauer_unchecked(lambda + 2.0, k - 2, s))
}

/// Direct quadrature of the same integral, any degree.
pub fn abs_kernel_by_quadrature(
    lambda: f64,
    k: usize,
    s: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    check_abs_kernel_args(lambda, s)?;
    let r = integrate_jacobi(
        |x| (x - s).abs() * gegenbauer_unchecked(lambda, k, x),
        lambda - 0.5,
        &spec.with_kinks([s]),
    )?;
    Ok(r.value)
}

/// `d/dx [(1 - x²)^{λ-1/2} C_k^λ(x)]` as
/// `-(k+1)(k+2λ-1) / (2(λ-1)) · (1 - x²)^{λ-3/2} C_{k+1}^{λ-1}(x)`, `λ ≠ 1`.
pub fn gegenbauer_weighted_derivative(lambda: f64, k: usize, x: f64) -> Result<f64> {
    if lambda == 1.0 {
        return Err(Error::domain("weighted derivative identity excludes λ = 1"));
    }
    if !(lambda > -0.5) {
        return Err(Error::domain(format!("λ must exceed -1/2, got {lambda}")));
    }
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("x must lie in (-1, 1), got {x}")));
    }
    let kf = k as f64;
    let coef = -(kf + 1.0) * (kf + 2.0 * lambda - 1.0) / (2.0 * (lambda - 1.0));
    let w = (1.0 - x) * (1.0 + x);
    Ok(coef * w.powf(lambda - 1.5) * gegenbauer_unchecked(lambda - 1.0, k + 1, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn weighted(lambda: f64, k: usize, x: f64) -> f64 {
        (1.0 - x * x).powf(lambda - 0.5) * gegenbauer_unchecked(lambda, k, x)
    }

    fn central_difference(lambda: f64, k: usize, x: f64) -> f64 {
        let h = 1e-5;
        (weighted(lambda, k, x + h) - weighted(lambda, k, x - h)) / (2.0 * h)
    }

    #[test]
    fn abs_kernel_examples() {
        let spec = QuadratureSpec::default();
        // ∫|x| √(1-x²) (4x²-1) dx = 2/5
        assert_abs_diff_eq!(
            abs_kernel_coefficient(1.0, 2, 0.0, &spec).unwrap(),
            0.4,
            epsilon = 1e-15
        );
        let brute = abs_kernel_by_quadrature(1.0, 2, 0.0, &spec).unwrap();
        assert_abs_diff_eq!(brute, 0.4, epsilon = 1e-12);
        assert_abs_diff_eq!(
            abs_kernel_coefficient(1.5, 3, 0.0, &spec).unwrap(),
            0.0,
            epsilon = 1e-16
        );
        let closed = abs_kernel_coefficient(0.5, 4, 0.3, &spec).unwrap();
        let brute = abs_kernel_by_quadrature(0.5, 4, 0.3, &spec).unwrap();
        assert_abs_diff_eq!(closed, brute, epsilon = 1e-9);
    }

    #[test]
    fn low_degrees_use_quadrature() {
        let spec = QuadratureSpec::default();
        // λ = 1/2, k = 0: ∫|x - s| dx = 1 + s²
        assert_abs_diff_eq!(
            abs_kernel_coefficient(0.5, 0, 0.4, &spec).unwrap(),
            1.16,
            epsilon = 1e-12
        );
        // λ = 1/2, k = 1: ∫|x - s| x dx = s³/3 - s
        let s: f64 = 0.4;
        let got = abs_kernel_coefficient(0.5, 1, s, &spec).unwrap();
        assert_abs_diff_eq!(got, s.powi(3) / 3.0 - s, epsilon = 1e-12);
    }

    #[test]
    fn abs_kernel_rejects_out_of_range() {
        let spec = QuadratureSpec::default();
        assert!(abs_kernel_coefficient(1.0, 3, 1.0, &spec).is_err());
        assert!(abs_kernel_coefficient(-0.6, 3, 0.0, &spec).is_err());
    }

    #[test]
    fn weighted_derivative_examples() {
        assert_abs_diff_eq!(
            gegenbauer_weighted_derivative(2.0, 0, 0.0).unwrap(),
            0.0,
            epsilon = 1e-16
        );
        for &(lambda, k, x) in &[(3.0, 2, 0.2), (0.5, 1, 0.5), (1.5, 4, -0.7), (2.5, 6, 0.35)] {
            let got = gegenbauer_weighted_derivative(lambda, k, x).unwrap();
            assert_relative_eq!(got, central_difference(lambda, k, x), max_relative = 1e-6);
        }
        assert!(gegenbauer_weighted_derivative(1.0, 2, 0.1).is_err());
        assert!(gegenbauer_weighted_derivative(2.0, 2, 1.0).is_err());
    }
}
