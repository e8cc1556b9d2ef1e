use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::specfun::gamma;
use crate::sum::CompensatedSum;

/// Default relative accuracy target of [`hyp2f1`].
pub const DEFAULT_REL_TOL: f64 = 1e-13;

/// Hard cap on the number of series terms.
pub const MAX_SERIES_TERMS: usize = 10_000;

/// Consecutive terms whose tail estimate must meet the tolerance.
const STOP_STREAK: usize = 3;

/// Parameters of `₂F₁(a, b; c; z)` for real arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeometricInput {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HypergeometricInput {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.a, self.b, self.c, self.z]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::domain("hypergeometric parameters must be finite"));
        }
        if self.c <= 0.0 && self.c == self.c.round() {
            return Err(Error::Pole { c: self.c });
        }
        if self.z >= 1.0 {
            return Err(Error::Divergent { z: self.z });
        }
        Ok(())
    }

    pub fn evaluate(&self) -> Result<f64> {
        self.evaluate_with(DEFAULT_REL_TOL)
    }

    /// Power series for `z ≥ -1/2`. Below that, Pfaff's transformation
    /// `₂F₁(a,b;c;z) = (1-z)^{-b} ₂F₁(c-a,b;c;z/(z-1))` moves the argument
    /// into `(1/3, 1)`, where the series has positive ratio.
    pub fn evaluate_with(&self, rel_tol: f64) -> Result<f64> {
        self.validate()?;
        let Self { a, b, c, z } = *self;
        if z >= -0.5 {
            hyp2f1_series(a, b, c, z, rel_tol)
        } else {
            let w = z / (z - 1.0);
            Ok((1.0 - z).powf(-b) * hyp2f1_series(c - a, b, c, w, rel_tol)?)
        }
    }
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` for real `z < 1`.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    HypergeometricInput::new(a, b, c, z).evaluate()
}

/// The defining power series `Σ (a)_k (b)_k / ((c)_k k!) z^k`, summed with
/// compensation until the geometric tail bound falls below
/// `rel_tol · |sum|` for three consecutive terms. Requires `|z| < 1`.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, rel_tol: f64) -> Result<f64> {
    HypergeometricInput::new(a, b, c, z).validate()?;
    if !(z.abs() < 1.0) {
        return Err(Error::Divergent { z });
    }
    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut term = 1.0f64;
    let mut streak = 0;
    let mut tail = f64::INFINITY;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let next = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        if next == 0.0 {
            // terminating series or z = 0
            return Ok(sum.value());
        }
        sum.add(next);
        // later ratios approach |z| monotonically, so the larger of the two
        // bounds every remaining ratio
        let ratio = (next / term).abs().max(z.abs());
        tail = if ratio < 1.0 {
            next.abs() * ratio / (1.0 - ratio)
        } else {
            f64::INFINITY
        };
        if tail <= rel_tol * sum.value().abs() {
            streak += 1;
            if streak >= STOP_STREAK {
                return Ok(sum.value());
            }
        } else {
            streak = 0;
        }
        term = next;
    }
    Err(Error::SeriesNonConvergence {
        terms: MAX_SERIES_TERMS,
        partial_sum: sum.value(),
        error_estimate: tail,
    })
}

/// `₂F₁` through Euler's integral
/// `Γ(c)/(Γ(b)Γ(c-b)) ∫₀¹ s^{b-1}(1-s)^{c-b-1}(1-zs)^{-a} ds`,
/// evaluated by quadrature after `s = sin² φ`.
///
/// Independent of the series route; requires `c > b ≥ 1/2` and
/// `c - b ≥ 1/2` so the substituted integrand stays bounded.
pub fn hyp2f1_euler(a: f64, b: f64, c: f64, z: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(b >= 0.5 && c - b >= 0.5) {
        return Err(Error::domain(format!(
            "Euler integral route needs b >= 1/2 and c - b >= 1/2 (b = {b}, c = {c})"
        )));
    }
    if !(z < 1.0) {
        return Err(Error::Divergent { z });
    }
    let p = 2.0 * b - 1.0;
    let q = 2.0 * (c - b) - 1.0;
    let integrand = |phi: f64| {
        let (s, co) = phi.sin_cos();
        let s2 = s * s;
        2.0 * s.powf(p) * co.powf(q) * (1.0 - z * s2).powf(-a)
    };
    let r = integrate(integrand, 0.0, FRAC_PI_2, &spec.with_kinks([]))?;
    Ok(gamma(c) / (gamma(b) * gamma(c - b)) * r.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn value_at_origin() {
        assert_eq!(hyp2f1(1.0, 2.0, 2.5, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn logarithm_closed_form() {
        // ₂F₁(1,1;2;z) = -ln(1-z)/z
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert_relative_eq!(v, 2.0 * std::f64::consts::LN_2, max_relative = 1e-13);
        for &z in &[-0.9, -3.0, -0.2, 0.3, 0.75, 0.95] {
            let v = hyp2f1(1.0, 1.0, 2.0, z).unwrap();
            assert_relative_eq!(v, -(-z).ln_1p() / z, max_relative = 1e-13);
        }
    }

    #[test]
    fn arcsine_closed_form() {
        // ₂F₁(1/2,1/2;3/2;x²) = asin(x)/x
        for &x in &[0.1f64, 0.5, 0.9] {
            let v = hyp2f1(0.5, 0.5, 1.5, x * x).unwrap();
            assert_relative_eq!(v, x.asin() / x, max_relative = 1e-13);
        }
    }

    #[test]
    fn largest_phi_argument() {
        // z = (n-1)/n at n = 4
        let v = hyp2f1(1.0, 2.0, 2.5, 0.75).unwrap();
        assert!(v.is_finite() && v > 1.0);
        let oracle = hyp2f1_euler(1.0, 2.0, 2.5, 0.75, &QuadratureSpec::tight()).unwrap();
        assert_relative_eq!(v, oracle, max_relative = 1e-12);
    }

    #[test]
    fn terminating_series() {
        // ₂F₁(-2, b; c; z) = 1 - 2bz/c + b(b+1)z²/(c(c+1))
        let (b, c, z) = (1.5, 2.5, -4.0);
        let expect = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        assert_relative_eq!(hyp2f1(-2.0, b, c, z).unwrap(), expect, max_relative = 1e-13);
        // the raw series terminates exactly
        let z = -0.4;
        let expect = 1.0 - 2.0 * b * z / c + b * (b + 1.0) * z * z / (c * (c + 1.0));
        assert_relative_eq!(
            hyp2f1_series(-2.0, b, c, z, 1e-16).unwrap(),
            expect,
            max_relative = 1e-15
        );
        assert_eq!(hyp2f1(0.0, 3.0, 4.5, 0.9).unwrap(), 1.0);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            hyp2f1(1.0, 1.0, 2.0, 1.0),
            Err(Error::Divergent { .. })
        ));
        assert!(matches!(
            hyp2f1(1.0, 1.0, -2.0, 0.1),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            hyp2f1(1.0, 1.0, 0.0, 0.1),
            Err(Error::Pole { .. })
        ));
        assert!(matches!(
            hyp2f1_series(1.0, 1.0, 2.0, 0.9999, 1e-15),
            Err(Error::SeriesNonConvergence {
                terms: MAX_SERIES_TERMS,
                ..
            })
        ));
        assert!(hyp2f1_euler(1.0, 0.2, 2.0, 0.5, &QuadratureSpec::default()).is_err());
    }
}
