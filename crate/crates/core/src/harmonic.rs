//! Poisson integrals of zonal boundary data on the unit ball, evaluated on
//! the symmetry axis, and empirical probes of the gradient bounds.
//!
//! The kernel is normalized to unit mass against the zonal measure, so a
//! datum bounded by one extends to a harmonic function bounded by one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    capital_c, gradient_bound, khavinson_radial_3d, khavinson_sharp_constant_3d,
    schwarz_pick_constant,
};
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::quadrature::{zonal_sphere_integral, QuadratureSpec};
use crate::report::{agreement_margin, Expectation, MarginTracker, VerificationReport};

/// Slack allowed when comparing a probed gradient with a bound.
pub const BOUND_SLACK: f64 = 1e-9;

/// Piecewise-constant `g(t)` on `[-1, 1]`, standing for the boundary datum
/// `ζ ↦ g(⟨ζ, e_n⟩)`. Piece `i` spans `[breakpoints[i-1], breakpoints[i])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZonalBoundaryData {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl ZonalBoundaryData {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::domain(format!(
                "{} breakpoints need {} values, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                values.len()
            )));
        }
        if breakpoints.iter().any(|b| !(b.abs() < 1.0)) {
            return Err(Error::domain("breakpoints must lie in (-1, 1)"));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("breakpoints must be strictly increasing"));
        }
        if values.iter().any(|v| !(v.abs() <= 1.0)) {
            return Err(Error::domain("values must lie in [-1, 1]"));
        }
        Ok(Self {
            breakpoints,
            values,
        })
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(Vec::new(), vec![value])
    }

    /// `-1` below `threshold`, `+1` above.
    pub fn sign_at(threshold: f64) -> Result<Self> {
        Self::new(vec![threshold], vec![-1.0, 1.0])
    }

    /// `+1` on the upper hemisphere, `-1` on the lower.
    pub fn hemisphere() -> Self {
        Self {
            breakpoints: vec![0.0],
            values: vec![-1.0, 1.0],
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.breakpoints.partition_point(|&b| b <= t);
        self.values[i]
    }
}

/// The point `ρ e_n` on the symmetry axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisPoint {
    rho: f64,
}

impl AxisPoint {
    pub fn new(rho: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::domain(format!("ρ must lie in [0, 1), got {rho}")));
        }
        Ok(Self { rho })
    }

    pub fn rho(self) -> f64 {
        self.rho
    }
}

/// `1 - 2ρt + ρ²` without cancellation near `ρ = t = 1`.
fn distance_sq(rho: f64, t: f64) -> f64 {
    (1.0 - rho) * (1.0 - rho) + 2.0 * rho * (1.0 - t)
}

/// `(1 - ρ²) / (1 - 2ρt + ρ²)^{n/2}`.
pub fn poisson_kernel(n: Dimension, rho: f64, t: f64) -> f64 {
    (1.0 - rho) * (1.0 + rho) / distance_sq(rho, t).powf(n.as_f64() / 2.0)
}

/// `∂ρ` of [`poisson_kernel`]:
/// `[(n - (n-4)ρ²) t - ρ(n + 2 - (n-2)ρ²)] / (1 - 2ρt + ρ²)^{(n+2)/2}`.
pub fn radial_derivative_kernel(n: Dimension, rho: f64, t: f64) -> f64 {
    let nf = n.as_f64();
    let u = rho * rho;
    let num = (nf - (nf - 4.0) * u) * t - rho * (nf + 2.0 - (nf - 2.0) * u);
    num / distance_sq(rho, t).powf((nf + 2.0) / 2.0)
}

/// The root `ρ(n + 2 - (n-2)ρ²) / (n - (n-4)ρ²)` of the numerator of
/// [`radial_derivative_kernel`], where the kernel derivative changes sign.
pub fn kernel_sign_change(n: Dimension, rho: f64) -> f64 {
    let nf = n.as_f64();
    let u = rho * rho;
    rho * (nf + 2.0 - (nf - 2.0) * u) / (nf - (nf - 4.0) * u)
}

fn merged_kinks(data: &ZonalBoundaryData, extra: Option<f64>) -> Vec<f64> {
    let mut kinks: Vec<f64> = data.breakpoints.clone();
    kinks.extend(extra.filter(|x| x.abs() < 1.0));
    kinks.sort_by(f64::total_cmp);
    kinks.dedup();
    kinks
}

/// `u(ρ e_n)` for the Poisson extension `u` of `data`.
pub fn zonal_poisson_value(
    n: Dimension,
    data: &ZonalBoundaryData,
    p: AxisPoint,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let rho = p.rho;
    let spec = spec.with_kinks(merged_kinks(data, None));
    zonal_sphere_integral(|t| poisson_kernel(n, rho, t) * data.eval(t), n, &spec)
}

/// `∂u/∂ρ` at `ρ e_n`. For zonal data the gradient on the axis is radial,
/// so this is `±|∇u(ρ e_n)|`.
pub fn radial_derivative(
    n: Dimension,
    data: &ZonalBoundaryData,
    p: AxisPoint,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let rho = p.rho;
    let spec = spec.with_kinks(merged_kinks(data, Some(kernel_sign_change(n, rho))));
    zonal_sphere_integral(
        |t| radial_derivative_kernel(n, rho, t) * data.eval(t),
        n,
        &spec,
    )
}

/// `|∇U(0)|` for the hemisphere datum `U`.
pub fn extremal_gradient_at_origin(n: Dimension, spec: &QuadratureSpec) -> Result<f64> {
    Ok(radial_derivative(
        n,
        &ZonalBoundaryData::hemisphere(),
        AxisPoint { rho: 0.0 },
        spec,
    )?
    .abs())
}

/// `sup |∂u/∂ρ (ρ e_n)|` over data bounded by one: the zonal `L¹` norm of the
/// kernel derivative.
pub fn sharp_radial_sup(n: Dimension, p: AxisPoint, spec: &QuadratureSpec) -> Result<f64> {
    let rho = p.rho;
    let root = kernel_sign_change(n, rho);
    let spec = spec.with_kinks(Some(root).filter(|x| x.abs() < 1.0));
    zonal_sphere_integral(|t| radial_derivative_kernel(n, rho, t).abs(), n, &spec)
}

/// The datum attaining [`sharp_radial_sup`] at `p`.
pub fn extremal_sign_data(n: Dimension, p: AxisPoint) -> Result<ZonalBoundaryData> {
    ZonalBoundaryData::sign_at(kernel_sign_change(n, p.rho))
}

/// A seeded random datum with `pieces` pieces. About half the values are
/// `±1`, the rest uniform in `[-1, 1]`.
pub fn random_zonal_data(seed: u64, pieces: usize) -> Result<ZonalBoundaryData> {
    if pieces == 0 {
        return Err(Error::domain("a datum needs at least one piece"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut breakpoints: Vec<f64> = Vec::with_capacity(pieces - 1);
    while breakpoints.len() < pieces - 1 {
        let b: f64 = rng.gen_range(-1.0..1.0);
        if b > -1.0 && !breakpoints.contains(&b) {
            breakpoints.push(b);
        }
    }
    breakpoints.sort_by(f64::total_cmp);
    let values = (0..pieces)
        .map(|_| {
            if rng.gen_bool(0.5) {
                if rng.gen_bool(0.5) {
                    1.0
                } else {
                    -1.0
                }
            } else {
                rng.gen_range(-1.0..=1.0)
            }
        })
        .collect();
    ZonalBoundaryData::new(breakpoints, values)
}

/// Radii used by the probes when none are given: 11 points on `[0, 0.95]`.
pub fn default_probe_grid() -> Vec<f64> {
    (0..11).map(|i| 0.095 * f64::from(i)).collect()
}

/// Data for a probe: the hemisphere datum first, then seeded random data.
fn probe_data(samples: usize, seed: u64) -> Result<Vec<ZonalBoundaryData>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = Vec::with_capacity(samples);
    if samples > 0 {
        data.push(ZonalBoundaryData::hemisphere());
    }
    for _ in 1..samples {
        let pieces = rng.gen_range(1..=8);
        data.push(random_zonal_data(rng.gen(), pieces)?);
    }
    Ok(data)
}

fn axis_points(rho_grid: &[f64]) -> Result<Vec<AxisPoint>> {
    rho_grid.iter().map(|&r| AxisPoint::new(r)).collect()
}

/// Largest observed ratio at one radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRow {
    pub rho: f64,
    pub max_ratio: f64,
    /// Index of the datum attaining `max_ratio`; 0 is the hemisphere datum.
    pub argmax: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeOutcome {
    pub report: VerificationReport,
    pub rows: Vec<ProbeRow>,
}

fn collect_rows(rho_grid: &[f64], ratios: &[Vec<f64>]) -> Vec<ProbeRow> {
    rho_grid
        .iter()
        .enumerate()
        .map(|(j, &rho)| {
            let (argmax, max_ratio) = ratios
                .iter()
                .map(|per_datum| per_datum[j])
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, r)| {
                    if r > best.1 {
                        (i, r)
                    } else {
                        best
                    }
                });
            ProbeRow {
                rho,
                max_ratio,
                argmax,
            }
        })
        .collect()
}

/// Checks `|∇u(ρ e_n)| ≤` [`gradient_bound`] for `samples` data (the
/// hemisphere datum and seeded random data) at every radius, the pointwise
/// domination by [`sharp_radial_sup`], and that the extremal sign datum
/// attains [`capital_c`]. Ratios are `|∇u| / gradient_bound`.
pub fn probe_schwarz_pick(
    n: Dimension,
    samples: usize,
    rho_grid: &[f64],
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<ProbeOutcome> {
    let points = axis_points(rho_grid)?;
    let data = probe_data(samples, seed)?;

    let per_point = points
        .par_iter()
        .map(|&p| {
            let rho = p.rho;
            let w = (1.0 - rho) * (1.0 + rho);
            let sup = sharp_radial_sup(n, p, spec)?;
            let c = capital_c(n, rho, spec)?;
            let extremal = radial_derivative(n, &extremal_sign_data(n, p)?, p, spec)?;
            Ok((w, gradient_bound(n, rho)?, sup, c, extremal))
        })
        .collect::<Result<Vec<_>>>()?;
    let gradients = data
        .par_iter()
        .map(|d| {
            points
                .iter()
                .map(|&p| radial_derivative(n, d, p, spec).map(f64::abs))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerificationReport::new("probe_schwarz_pick", n.get());
    let mut within = MarginTracker::new("gradient_within_bound");
    let mut dominated = MarginTracker::new("dominated_by_sharp_sup");
    let mut attains = MarginTracker::new("extremal_sign_attains_capital_c");
    let mut ratios = vec![vec![0.0; points.len()]; data.len()];
    for (i, grads) in gradients.iter().enumerate() {
        for (j, (&g, &(w, bound, sup, _, _))) in grads.iter().zip(&per_point).enumerate() {
            within.record(points[j].rho, (bound - g) * w + BOUND_SLACK);
            dominated.record(points[j].rho, (sup - g) * w + BOUND_SLACK);
            ratios[i][j] = g / bound;
        }
    }
    for (p, &(w, _, _, c, extremal)) in points.iter().zip(&per_point) {
        attains.record(p.rho, 1e-6 - (extremal.abs() * w - c * w).abs());
    }
    report.push(within.finish());
    report.push(dominated.finish());
    report.push(attains.finish());

    if n.get() == 3 {
        // the constant 8/(3√3) is approached only as ρ → 1
        let mut strict = MarginTracker::new("strictly_below_sharp_constant");
        for (p, &(w, _, _, c, _)) in points.iter().zip(&per_point) {
            strict.record(p.rho, khavinson_sharp_constant_3d() - c * w);
        }
        report.push(strict.finish());
    }

    Ok(ProbeOutcome {
        rows: collect_rows(rho_grid, &ratios),
        report,
    })
}

/// Records `|∇u|(1 - ρ²) / ((1 - u²) · 2m_{n-1}/m_n)` over `samples` data
/// and every radius. A ratio above `1 + 1e-9` would be a counterexample to
/// the refined bound; the check is binding only at `n = 2`, where the bound
/// is known, and observational otherwise.
pub fn probe_conjecture(
    n: Dimension,
    samples: usize,
    rho_grid: &[f64],
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<ProbeOutcome> {
    if n.get() == 3 {
        return Err(Error::domain("the refined bound is not posed for n = 3"));
    }
    let points = axis_points(rho_grid)?;
    let data = probe_data(samples, seed)?;
    let k = schwarz_pick_constant(n);
    let ratios = data
        .par_iter()
        .map(|d| {
            points
                .iter()
                .map(|&p| {
                    // constant data have zero gradient; with |u| = 1 the ratio
                    // would be noise over zero
                    if d.is_constant() {
                        return Ok(0.0);
                    }
                    let g = radial_derivative(n, d, p, spec)?.abs();
                    let u = zonal_poisson_value(n, d, p, spec)?;
                    Ok(g * (1.0 - p.rho) * (1.0 + p.rho) / ((1.0 - u) * (1.0 + u) * k))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerificationReport::new("probe_conjecture", n.get());
    let mut none = MarginTracker::new("no_counterexample");
    if n.get() != 2 {
        none = none.expect(Expectation::Observe);
    }
    for per_datum in &ratios {
        for (p, &r) in points.iter().zip(per_datum) {
            none.record(p.rho, 1.0 + BOUND_SLACK - r);
        }
    }
    report.push(none.finish());
    Ok(ProbeOutcome {
        rows: collect_rows(rho_grid, &ratios),
        report,
    })
}

/// Checks the realization of the pointwise sharp constant as the kernel
/// derivative's `L¹` norm, kernel normalization, extremality at the origin,
/// and the position of [`capital_c`] relative to [`gradient_bound`].
pub fn verify_theorem_b(
    n: Dimension,
    rho_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let points = axis_points(rho_grid)?;
    let one = ZonalBoundaryData::constant(1.0)?;
    let rows = points
        .par_iter()
        .map(|&p| {
            Ok((
                sharp_radial_sup(n, p, spec)?,
                capital_c(n, p.rho, spec)?,
                zonal_poisson_value(n, &one, p, spec)?,
                gradient_bound(n, p.rho)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = VerificationReport::new("theoremB", n.get());
    let mut sup_vs_c = MarginTracker::new("sharp_sup_equals_capital_c");
    let mut mass = MarginTracker::new("kernel_normalization");
    for (p, &(sup, c, m, _)) in points.iter().zip(&rows) {
        sup_vs_c.record(p.rho, 1e-6 - (sup - c).abs());
        mass.record(p.rho, 1e-10 - (m - 1.0).abs());
    }
    report.push(sup_vs_c.finish());
    report.push(mass.finish());

    let mut origin = MarginTracker::new("extremal_gradient_at_origin");
    origin.record(
        0.0,
        1e-8 - (extremal_gradient_at_origin(n, spec)? - schwarz_pick_constant(n)).abs(),
    );
    report.push(origin.finish());

    match n.get() {
        2 => {
            let mut flat = MarginTracker::new("capital_c_equals_envelope");
            for (p, &(_, c, _, bound)) in points.iter().zip(&rows) {
                flat.record(p.rho, agreement_margin(c, bound, 1e-10, 0.0));
            }
            report.push(flat.finish());
        }
        3 => {
            let mut radial = MarginTracker::new("khavinson_radial_equals_capital_c");
            let mut below = MarginTracker::new("scaled_constant_below_sharp_constant");
            for (p, &(sup, c, _, _)) in points.iter().zip(&rows) {
                let k = khavinson_radial_3d(p.rho)?;
                radial.record(p.rho, 1e-6 - (k - c).abs().max((k - sup).abs()));
                below.record(
                    p.rho,
                    khavinson_sharp_constant_3d() - c * (1.0 - p.rho) * (1.0 + p.rho),
                );
            }
            report.push(radial.finish());
            report.push(below.finish());
        }
        _ => {
            let mut below = MarginTracker::new("capital_c_below_envelope");
            let mut equal = MarginTracker::new("capital_c_equals_envelope_at_origin");
            for (p, &(_, c, _, bound)) in points.iter().zip(&rows) {
                if p.rho == 0.0 {
                    equal.record(0.0, agreement_margin(c, bound, 1e-10, 0.0));
                } else {
                    below.record(p.rho, bound - c - 1e-12);
                }
            }
            report.push(below.finish());
            if points.iter().any(|p| p.rho == 0.0) {
                report.push(equal.finish());
            }
        }
    }
    Ok(report)
}
