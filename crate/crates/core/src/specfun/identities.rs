//! Cross-checks of the classical identities the Φ machinery relies on.
//! Each check compares two routes that share no evaluation path.

use crate::error::Result;
use crate::quadrature::QuadratureSpec;
use crate::report::{agreement_margin, MarginTracker, VerificationReport};
use crate::specfun::gegenbauer::gegenbauer_unchecked;
use crate::specfun::{
    abs_kernel_by_quadrature, abs_kernel_coefficient, gegenbauer_sequence,
    gegenbauer_weighted_derivative, hyp2f1, hyp2f1_euler,
};
use crate::sum::CompensatedSum;

/// Parameter grids for [`verify_identities`].
#[derive(Debug, Clone)]
pub struct IdentityGrids {
    pub generating_lambdas: Vec<f64>,
    pub generating_x: Vec<f64>,
    pub generating_z: Vec<f64>,
    pub dimensions: Vec<u32>,
    pub rainville_x: Vec<f64>,
    pub rainville_z: Vec<f64>,
    pub pfaff_params: Vec<(f64, f64, f64)>,
    pub pfaff_z: Vec<f64>,
    pub contiguous_z: Vec<f64>,
    pub derivative_z: Vec<f64>,
    pub abs_kernel_lambdas: Vec<f64>,
    pub abs_kernel_max_degree: usize,
    pub abs_kernel_s: Vec<f64>,
    pub weighted_derivative_lambdas: Vec<f64>,
    pub weighted_derivative_max_degree: usize,
    pub weighted_derivative_x: Vec<f64>,
}

fn steps(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

impl Default for IdentityGrids {
    fn default() -> Self {
        let dimensions: Vec<u32> = (4..=8).collect();
        let mut pfaff_params: Vec<(f64, f64, f64)> = dimensions
            .iter()
            .map(|&n| {
                let n = f64::from(n);
                (1.0, n / 2.0, (n + 1.0) / 2.0)
            })
            .collect();
        pfaff_params.extend([
            (0.5, 1.5, 2.5),
            (1.0, 1.0, 2.0),
            (-0.5, 2.0, 3.5),
            (2.5, 0.5, 1.5),
        ]);
        Self {
            generating_lambdas: vec![0.5, 1.0, 1.5, 2.5],
            generating_x: steps(-0.9, 0.9, 19),
            generating_z: steps(0.1, 0.7, 7),
            dimensions,
            rainville_x: steps(-0.9, 0.9, 19),
            rainville_z: steps(0.0, 0.8, 9),
            pfaff_params,
            pfaff_z: steps(0.0, 0.9, 19),
            contiguous_z: steps(0.05, 0.95, 19),
            derivative_z: steps(0.1, 0.8, 8),
            abs_kernel_lambdas: vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0],
            abs_kernel_max_degree: 10,
            abs_kernel_s: steps(-0.9, 0.9, 7),
            weighted_derivative_lambdas: vec![0.5, 1.5, 2.0, 3.0],
            weighted_derivative_max_degree: 6,
            weighted_derivative_x: steps(-0.8, 0.8, 9),
        }
    }
}

/// Smallest degree `K` such that the majorant series `Σ_{k>K} m_k` is below
/// `tol`, where `m_{k+1} = m_k · (p + k) / (k + 1) · z` and `m_0 = 1`.
fn truncation_for_majorant(p: f64, z: f64, tol: f64) -> usize {
    let mut m = 1.0f64;
    for k in 0..100_000usize {
        let kf = k as f64;
        let ratio = (p + kf) / (kf + 1.0) * z;
        let next = m * ratio;
        let bound = ratio.max(z);
        if bound < 1.0 && next / (1.0 - bound) <= tol {
            return k;
        }
        m = next;
    }
    100_000
}

fn check_generating_relation(g: &IdentityGrids) -> MarginTracker {
    let mut t = MarginTracker::new("generating_relation");
    for &lambda in &g.generating_lambdas {
        for &z in &g.generating_z {
            // |C_k^λ(x)| ≤ C_k^λ(1) = (2λ)_k / k!
            let k_max = truncation_for_majorant(2.0 * lambda, z, 1e-15);
            for &x in &g.generating_x {
                let c = gegenbauer_sequence(lambda, k_max, x);
                let mut zk = 1.0;
                let mut s = CompensatedSum::new();
                for ck in c {
                    s.add(ck * zk);
                    zk *= z;
                }
                let closed = (1.0 - 2.0 * x * z + z * z).powf(-lambda);
                t.record(z, 1e-10 - (s.value() - closed).abs());
            }
        }
    }
    t
}

fn check_rainville(g: &IdentityGrids) -> Result<MarginTracker> {
    let mut t = MarginTracker::new("rainville_generating_relation");
    for &n in &g.dimensions {
        let n = f64::from(n);
        let nu = n - 1.0;
        let lambda = n / 2.0;
        for &z in &g.rainville_z {
            let k_max = truncation_for_majorant(nu, z, 1e-15);
            for &x in &g.rainville_x {
                let c = gegenbauer_sequence(lambda, k_max, x);
                let mut coef = 1.0;
                let mut s = CompensatedSum::new();
                for (k, ck) in c.iter().enumerate() {
                    s.add(coef * ck);
                    let kf = k as f64;
                    coef *= (nu + kf) / (2.0 * lambda + kf) * z;
                }
                let one_m = 1.0 - x * z;
                let arg = z * z * (x * x - 1.0) / (one_m * one_m);
                let rhs = one_m.powf(-nu) * hyp2f1(nu / 2.0, (nu + 1.0) / 2.0, lambda + 0.5, arg)?;
                t.record(z, agreement_margin(s.value(), rhs, 0.0, 1e-9));
            }
        }
    }
    Ok(t)
}

fn check_pfaff(g: &IdentityGrids) -> Result<MarginTracker> {
    let mut t = MarginTracker::new("pfaff_transformation");
    let spec = QuadratureSpec::tight();
    for &(a, b, c) in &g.pfaff_params {
        for &z in &g.pfaff_z {
            let lhs = hyp2f1(a, b, c, z)?;
            let w = z / (z - 1.0);
            let rhs = (1.0 - z).powf(-b) * hyp2f1_euler(c - a, b, c, w, &spec)?;
            t.record(z, agreement_margin(lhs, rhs, 1e-12, 0.0));
        }
    }
    Ok(t)
}

fn check_contiguous(g: &IdentityGrids) -> Result<MarginTracker> {
    let mut t = MarginTracker::new("gauss_contiguous_relation");
    for &n in &g.dimensions {
        let n = f64::from(n);
        let (a, b, c) = (1.0, n / 2.0, (n + 1.0) / 2.0);
        for &z in &g.contiguous_z {
            let lhs = (c - b) * z * hyp2f1(a, b, c + 1.0, z)?;
            let rhs = c * hyp2f1(a - 1.0, b, c, z)? - c * (1.0 - z) * hyp2f1(a, b, c, z)?;
            t.record(z, agreement_margin(lhs, rhs, 1e-12, 1e-15));
        }
    }
    Ok(t)
}

fn check_derivative_identity(g: &IdentityGrids) -> Result<MarginTracker> {
    let mut t = MarginTracker::new("hypergeometric_derivative_identity");
    let h = 1e-5;
    for &n in &g.dimensions {
        let n = f64::from(n);
        let (a, b, c) = (1.0, n / 2.0, (n + 1.0) / 2.0);
        let lhs_fn = |z: f64| -> Result<f64> {
            Ok(z.powf(c - a) * (1.0 - z).powf(a + b - c) * hyp2f1(a, b, c, z)?)
        };
        for &z in &g.derivative_z {
            let fd = (lhs_fn(z + h)? - lhs_fn(z - h)?) / (2.0 * h);
            let closed = (c - a)
                * z.powf(c - a - 1.0)
                * (1.0 - z).powf(a + b - c - 1.0)
                * hyp2f1(a - 1.0, b, c, z)?;
            t.record(z, agreement_margin(fd, closed, 1e-6, 0.0));
        }
    }
    Ok(t)
}

fn check_lemma1(g: &IdentityGrids) -> Result<MarginTracker> {
    let mut t = MarginTracker::new("abs_kernel_closed_form");
    let spec = QuadratureSpec::default();
    for &lambda in &g.abs_kernel_lambdas {
        for k in 2..=g.abs_kernel_max_degree {
            for &s in &g.abs_kernel_s {
                let closed = abs_kernel_coefficient(lambda, k, s, &spec)?;
                let brute = abs_kernel_by_quadrature(lambda, k, s, &spec)?;
                t.record(s, 1e-9 - (closed - brute).abs());
            }
        }
    }
    Ok(t)
}

fn check_lemma2(g: &IdentityGrids) -> Result<MarginTracker> {
    let mut t = MarginTracker::new("weighted_gegenbauer_derivative");
    let h = 1e-5;
    for &lambda in &g.weighted_derivative_lambdas {
        let f = |x: f64, k: usize| {
            ((1.0 - x) * (1.0 + x)).powf(lambda - 0.5) * gegenbauer_unchecked(lambda, k, x)
        };
        for k in 0..=g.weighted_derivative_max_degree {
            for &x in &g.weighted_derivative_x {
                let fd = (f(x + h, k) - f(x - h, k)) / (2.0 * h);
                let closed = gegenbauer_weighted_derivative(lambda, k, x)?;
                t.record(x, agreement_margin(fd, closed, 1e-6, 1e-9));
            }
        }
    }
    Ok(t)
}

/// Runs every identity check on the given grids.
pub fn verify_identities(grids: &IdentityGrids) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("identities", 0);
    report.push(check_generating_relation(grids).finish());
    report.push(check_rainville(grids)?.finish());
    report.push(check_pfaff(grids)?.finish());
    report.push(check_contiguous(grids)?.finish());
    report.push(check_derivative_identity(grids)?.finish());
    report.push(check_lemma1(grids)?.finish());
    report.push(check_lemma2(grids)?.finish());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn majorant_truncation_is_finite() {
        let k = truncation_for_majorant(5.0, 0.7, 1e-15);
        assert!(k > 50 && k < 500, "k = {k}");
        assert_eq!(truncation_for_majorant(1.0, 0.0, 1e-15), 0);
    }

    #[test]
    fn default_grids_pass() {
        let r = verify_identities(&IdentityGrids::default()).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
        assert!(r.passed);
    }
}
