//! Grid sweeps checking monotonicity, concavity and the technical inequality.

use rayon::prelude::*;

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::report::{agreement_margin, Expectation, MarginTracker, VerificationReport};

use super::{
    default_truncation, phi_integral, phi_quad, phi_second, phi_second_closed, phi_second_fd,
    phi_second_series, psi_parts, psi_prime_closed, psi_quadratic, technical_margin, varphi,
};

/// Margin separating "strictly" from floating-point noise.
pub const STRICT_MARGIN: f64 = 1e-12;

/// Step of the one-sided estimate of `Φ'(0)`.
const ORIGIN_SLOPE_STEP: f64 = 1e-3;

/// Interval on which the routes for `Φ''` and `Ψ'` are compared.
const AGREEMENT_WINDOW: (f64, f64) = (0.05, 0.95);

fn closed_grid(size: usize) -> Result<Vec<f64>> {
    if size < 2 {
        return Err(Error::domain(format!(
            "grid needs at least 2 points, got {size}"
        )));
    }
    Ok((0..size).map(|i| i as f64 / (size - 1) as f64).collect())
}

fn open_grid(size: usize) -> Result<Vec<f64>> {
    if size < 1 {
        return Err(Error::domain("grid needs at least 1 point"));
    }
    Ok((1..=size).map(|i| i as f64 / (size + 1) as f64).collect())
}

fn in_window(x: f64) -> bool {
    (AGREEMENT_WINDOW.0..=AGREEMENT_WINDOW.1).contains(&x)
}

/// Evaluates `f` on every point in parallel, keeping grid order.
fn sweep<T, F>(points: &[f64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync,
{
    points.par_iter().map(|&x| f(x)).collect()
}

/// Samples Φ by quadrature on `grid_size` uniform points of `[0, 1]`.
///
/// For `n ≥ 4` checks strict decrease with maximum `Φ(0) = 2/(n-1)`; for
/// `n = 3` strict increase with maximum `Φ(1) = 16/(9√3)`. Both check that
/// a one-sided difference of Φ at the origin vanishes.
pub fn verify_monotone(n: Dimension, grid_size: usize) -> Result<VerificationReport> {
    n.require_at_least(3, "verify_monotone")?;
    let grid = closed_grid(grid_size)?;
    let spec = QuadratureSpec::default();
    let values = sweep(&grid, |rho| Ok(phi_quad(n, rho, &spec)?.value))?;
    let nf = n.as_f64();
    let increasing = n.get() == 3;

    let mut report = VerificationReport::new("monotone", n.get());
    let mut order = MarginTracker::new(if increasing {
        "strictly_increasing"
    } else {
        "strictly_decreasing"
    });
    for i in 1..grid.len() {
        let step = values[i] - values[i - 1];
        let step = if increasing { step } else { -step };
        order.record(grid[i], step - STRICT_MARGIN);
    }
    report.push(order.finish());

    let mut origin = MarginTracker::new("value_at_origin");
    origin.record(0.0, 1e-10 - (values[0] - 2.0 / (nf - 1.0)).abs());
    report.push(origin.finish());

    let (argmax, _) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        });
    let mut location = MarginTracker::new(if increasing {
        "maximum_at_one"
    } else {
        "maximum_at_origin"
    });
    let target = if increasing { grid.len() - 1 } else { 0 };
    let others = values
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != target)
        .map(|(_, &v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    location.record(grid[argmax], values[target] - others);
    report.push(location.finish());

    if increasing {
        let mut top = MarginTracker::new("value_at_one");
        top.record(
            1.0,
            1e-10 - (values[grid.len() - 1] - 16.0 / (9.0 * 3f64.sqrt())).abs(),
        );
        report.push(top.finish());
    }

    // second-order one-sided difference; uses only ρ ≥ 0
    let h = ORIGIN_SLOPE_STEP;
    let tight = QuadratureSpec::tight();
    let at = |r: f64| phi_integral(n, r, &tight).map(|q| q.value);
    let slope = (-3.0 * at(0.0)? + 4.0 * at(h)? - at(2.0 * h)?) / (2.0 * h);
    let mut flat = MarginTracker::new("zero_slope_at_origin");
    flat.record(0.0, 1e-6 - slope.abs());
    report.push(flat.finish());
    Ok(report)
}

/// Checks `Φ'' < 0` on `grid_size` interior points of `(0, 1)` and the
/// pairwise agreement of the closed-form, series and finite-difference routes
/// on `[0.05, 0.95]`.
///
/// At `n = 3` the sign check is expected to fail and the origin value
/// `Φ''(0) = 1/18` is checked instead of its sign.
pub fn verify_concavity(n: Dimension, grid_size: usize) -> Result<VerificationReport> {
    n.require_at_least(3, "verify_concavity")?;
    let grid = open_grid(grid_size)?;
    let convex_case = n.get() == 3;
    let mut report = VerificationReport::new("concavity", n.get());

    let second = sweep(&grid, |rho| Ok(phi_second(n, rho)?.value))?;
    let mut sign = MarginTracker::new("second_derivative_negative");
    if convex_case {
        sign = sign.expect(Expectation::Fail);
    }
    for (&rho, &v) in grid.iter().zip(&second) {
        sign.record(rho, -v - STRICT_MARGIN);
    }
    report.push(sign.finish());

    let at_origin = phi_second_series(n, 0.0, 0)?.value;
    let mut origin = MarginTracker::new(if convex_case {
        "second_derivative_at_origin"
    } else {
        "second_derivative_at_origin_negative"
    });
    if convex_case {
        origin.record(0.0, agreement_margin(at_origin, 1.0 / 18.0, 1e-10, 0.0));
    } else {
        origin.record(0.0, -at_origin - STRICT_MARGIN);
    }
    report.push(origin.finish());

    let window: Vec<f64> = grid.iter().copied().filter(|&r| in_window(r)).collect();
    let tight = QuadratureSpec::tight();
    let routes = sweep(&window, |rho| {
        let closed = phi_second_closed(n, rho)?.value;
        let series = phi_second_series(n, rho, default_truncation(n, rho))?.value;
        let fd = phi_second_fd(n, rho, &tight)?.value;
        Ok((closed, series, fd))
    })?;
    let mut vs_series = MarginTracker::new("closed_vs_series");
    let mut vs_fd = MarginTracker::new("closed_vs_finite_difference");
    let mut series_vs_fd = MarginTracker::new("series_vs_finite_difference");
    for (&rho, &(closed, series, fd)) in window.iter().zip(&routes) {
        vs_series.record(rho, agreement_margin(closed, series, 1e-6, 1e-12));
        vs_fd.record(rho, agreement_margin(closed, fd, 1e-6, 1e-12));
        series_vs_fd.record(rho, agreement_margin(series, fd, 1e-6, 1e-12));
    }
    report.push(vs_series.finish());
    report.push(vs_fd.finish());
    report.push(series_vs_fd.finish());
    Ok(report)
}

/// Checks the hypergeometric inequality, the sign of `Ψ`, the closed form of
/// `Ψ'` and the positivity of `Q_n` on `grid_size` uniform points of `[0, 1]`.
///
/// For `n = 3` the inequality and the sign of `Ψ` are checked in reversed
/// orientation.
pub fn verify_technical(n: Dimension, grid_size: usize) -> Result<VerificationReport> {
    n.require_at_least(3, "verify_technical")?;
    let grid = closed_grid(grid_size)?;
    let reversed = n.get() == 3;
    let orient = if reversed { -1.0 } else { 1.0 };
    let mut report = VerificationReport::new("technical", n.get());

    let rows = sweep(&grid, |t| Ok((technical_margin(n, t)?, psi_parts(n, t)?)))?;

    let mut ineq = MarginTracker::new(if reversed {
        "technical_inequality_reversed"
    } else {
        "technical_inequality"
    });
    let mut equality = MarginTracker::new("technical_equality_at_zero");
    let mut sign = MarginTracker::new(if reversed {
        "psi_negative"
    } else {
        "psi_positive"
    });
    let mut psi_zero = MarginTracker::new("psi_zero_at_origin");
    for (&t, &(margin, (a, b))) in grid.iter().zip(&rows) {
        if t == 0.0 {
            equality.record(t, 1e-12 - margin.abs());
            psi_zero.record(t, 1e-12 - (a - b).abs());
        } else {
            ineq.record(t, orient * margin - STRICT_MARGIN);
            // relative: both terms vanish like t^{(n-1)/2}
            sign.record(t, orient * (a - b) / b - STRICT_MARGIN);
        }
    }
    report.push(ineq.finish());
    report.push(equality.finish());
    report.push(sign.finish());
    report.push(psi_zero.finish());

    if !reversed {
        let window: Vec<f64> = grid.iter().copied().filter(|&t| in_window(t)).collect();
        let h = 1e-5;
        let derivs = sweep(&window, |t| {
            let psi_at = |s: f64| psi_parts(n, s).map(|(a, b)| a - b);
            let fd = (psi_at(t + h)? - psi_at(t - h)?) / (2.0 * h);
            Ok((psi_prime_closed(n, t)?, fd))
        })?;
        let mut prime = MarginTracker::new("psi_prime_matches_difference");
        for (&t, &(closed, fd)) in window.iter().zip(&derivs) {
            prime.record(t, agreement_margin(closed, fd, 1e-5, 0.0));
        }
        report.push(prime.finish());

        let mut quad = MarginTracker::new("quadratic_positive");
        for &t in &grid {
            quad.record(t, psi_quadratic(n, t));
        }
        report.push(quad.finish());
    }

    let mut endpoint = MarginTracker::new("substitution_endpoint");
    let nf = n.as_f64();
    endpoint.record(1.0, 1e-15 - (varphi(n, 1.0) - (nf - 1.0) / nf).abs());
    report.push(endpoint.finish());
    Ok(report)
}
