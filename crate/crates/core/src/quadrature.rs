//! Globally adaptive Gauss–Legendre quadrature for integrands on `[-1, 1]`
//! with declared interior kinks and algebraic endpoint weights.
//!
//! The interval is first split at every caller-declared kink. Pieces that
//! touch `±1` are integrated in the angle variable `t = cos θ`, which turns
//! the weight `(1 - t²)^α dt` into `sin^{2α+1} θ dθ` and removes the endpoint
//! singularity for the half-integer exponents that show up in zonal sphere
//! integrals. Each piece is then bisected adaptively: a segment's error is
//! estimated by comparing the base Gauss rule on the whole segment against
//! the same rule applied to its two halves.

use std::f64::consts::PI;

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::specfun::gamma;
use crate::sum::CompensatedSum;

/// Tolerances and partition data for [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Number of Gauss–Legendre nodes of the base rule.
    pub base_nodes: usize,
    /// Interior points where the integrand is not smooth, strictly increasing.
    pub kinks: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-11,
            max_subdivisions: 2000,
            base_nodes: 15,
            kinks: Vec::new(),
        }
    }
}

impl QuadratureSpec {
    /// Near machine-precision settings, used where quadrature results feed
    /// finite differences.
    pub fn tight() -> Self {
        Self {
            abs_tol: 1e-15,
            rel_tol: 5e-15,
            max_subdivisions: 4000,
            ..Self::default()
        }
    }

    /// Copy of `self` with its kinks replaced.
    pub fn with_kinks(&self, kinks: impl IntoIterator<Item = f64>) -> Self {
        Self {
            kinks: kinks.into_iter().collect(),
            ..self.clone()
        }
    }

    fn validate(&self, a: f64, b: f64) -> Result<()> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(format!(
                "integration interval [{a}, {b}] is empty or not finite"
            )));
        }
        if !(self.abs_tol >= 1e-15 && self.rel_tol >= 1e-15) {
            return Err(Error::domain(
                "quadrature tolerances must be at least 1e-15",
            ));
        }
        if self.base_nodes == 0 {
            return Err(Error::domain("base rule needs at least one node"));
        }
        let mut prev = a;
        for &k in &self.kinks {
            if !(k > prev && k < b) {
                return Err(Error::domain(format!(
                    "kink {k} is not strictly increasing and interior to [{a}, {b}]"
                )));
            }
            prev = k;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions_used: usize,
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, refined by Newton on P_n
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            nodes[n - 1 - i] = -x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn apply<F: Fn(f64) -> f64>(&self, f: &F, lo: f64, hi: f64) -> f64 {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let s: CompensatedSum = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .collect();
        half * s.value()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    (p1, nf * (x * p1 - p0) / (x * x - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Chart {
    Plain,
    Cosine,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    chart: Chart,
    left: f64,
    right: f64,
    err: f64,
}

impl Segment {
    fn value(&self) -> f64 {
        self.left + self.right
    }
}

struct Integrator<'a, F> {
    f: &'a F,
    alpha: f64,
    rule: GaussLegendre,
}

impl<F: Fn(f64) -> f64> Integrator<'_, F> {
    fn eval_chart(&self, chart: Chart, x: f64) -> f64 {
        match chart {
            Chart::Plain => {
                let v = (self.f)(x);
                if self.alpha == 0.0 {
                    v
                } else {
                    v * ((1.0 - x) * (1.0 + x)).powf(self.alpha)
                }
            }
            Chart::Cosine => {
                let s = x.sin();
                (self.f)(x.cos()) * s.powf(2.0 * self.alpha + 1.0)
            }
        }
    }

    fn rule_on(&self, chart: Chart, lo: f64, hi: f64) -> f64 {
        self.rule.apply(&|x| self.eval_chart(chart, x), lo, hi)
    }

    fn segment(&self, chart: Chart, lo: f64, hi: f64, whole: Option<f64>) -> Segment {
        let mid = 0.5 * (lo + hi);
        let whole = whole.unwrap_or_else(|| self.rule_on(chart, lo, hi));
        let left = self.rule_on(chart, lo, mid);
        let right = self.rule_on(chart, mid, hi);
        let floor = 10.0 * f64::EPSILON * (left.abs() + right.abs());
        Segment {
            lo,
            hi,
            chart,
            left,
            right,
            err: (whole - (left + right)).abs().max(floor),
        }
    }
}

fn integrate_weighted<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    alpha: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate(a, b)?;
    let integrator = Integrator {
        f,
        alpha,
        rule: GaussLegendre::new(spec.base_nodes),
    };

    let mut breaks = Vec::with_capacity(spec.kinks.len() + 2);
    breaks.push(a);
    breaks.extend_from_slice(&spec.kinks);
    breaks.push(b);

    let mut segments: Vec<Segment> = breaks
        .windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let touches_end = (lo == -1.0 || hi == 1.0) && lo >= -1.0 && hi <= 1.0;
            if touches_end {
                // θ runs opposite to t
                integrator.segment(Chart::Cosine, hi.acos(), lo.acos(), None)
            } else {
                integrator.segment(Chart::Plain, lo, hi, None)
            }
        })
        .collect();

    let mut subdivisions = 0usize;
    loop {
        let value = segments
            .iter()
            .map(Segment::value)
            .collect::<CompensatedSum>()
            .value();
        let err: f64 = segments.iter().map(|s| s.err).sum();
        if !value.is_finite() || !err.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                value,
                error_estimate: err,
                subdivisions,
            });
        }
        if err <= spec.abs_tol.max(spec.rel_tol * value.abs()) {
            return Ok(QuadratureResult {
                value,
                error_estimate: err,
                subdivisions_used: subdivisions,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                value,
                error_estimate: err,
                subdivisions,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .expect("at least one segment");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.lo + s.hi);
        if !(s.lo < mid && mid < s.hi) {
            // cannot bisect further in binary64
            return Err(Error::QuadratureNonConvergence {
                value,
                error_estimate: err,
                subdivisions,
            });
        }
        segments.push(integrator.segment(s.chart, s.lo, mid, Some(s.left)));
        segments.push(integrator.segment(s.chart, mid, s.hi, Some(s.right)));
        subdivisions += 1;
    }
}

/// Integrates `f` over `[a, b]`.
///
/// Kinks listed in `spec` split the interval; subintervals that end at
/// `t = ±1` are mapped through `t = cos θ`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    integrate_weighted(&f, a, b, 0.0, spec)
}

/// Integrates `f(t) (1 - t²)^alpha` over `[-1, 1]`, evaluating the weight
/// exactly as `sin^{2α} θ` on the endpoint pieces. Requires `alpha > -1`.
pub fn integrate_jacobi<F: Fn(f64) -> f64>(
    f: F,
    alpha: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    if !(alpha > -1.0) {
        return Err(Error::domain(format!(
            "weight exponent {alpha} is not integrable"
        )));
    }
    integrate_weighted(&f, -1.0, 1.0, alpha, spec)
}

/// The constant `c_n = Γ(n/2) / (√π Γ((n-1)/2))` normalizing the zonal
/// measure `c_n (1 - t²)^{(n-3)/2} dt` to total mass one.
pub fn zonal_normalization(n: Dimension) -> f64 {
    let nf = n.as_f64();
    gamma(nf / 2.0) / (PI.sqrt() * gamma((nf - 1.0) / 2.0))
}

/// Average over the unit sphere `S^{n-1}` of `ζ ↦ g(⟨ζ, e⟩)`.
pub fn zonal_sphere_integral<F: Fn(f64) -> f64>(
    g: F,
    n: Dimension,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let alpha = (n.as_f64() - 3.0) / 2.0;
    let r = integrate_jacobi(g, alpha, spec)?;
    Ok(zonal_normalization(n) * r.value)
}
