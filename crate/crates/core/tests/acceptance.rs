//! Acceptance criteria, one PASS/FAIL line each.

use std::f64::consts::PI;
use std::process::ExitCode;

use harmonic_schwarz::bounds::{
    capital_c, khavinson_radial_3d, khavinson_sharp_constant_3d, schwarz_pick_constant,
};
use harmonic_schwarz::harmonic::{
    default_probe_grid, extremal_gradient_at_origin, probe_conjecture, probe_schwarz_pick,
    sharp_radial_sup, AxisPoint,
};
use harmonic_schwarz::phi::{
    default_truncation, phi3_closed, phi_quad, phi_second_closed, phi_second_fd, phi_second_series,
    phi_series, psi, psi_quadratic, verify_concavity, verify_technical,
};
use harmonic_schwarz::quadrature::QuadratureSpec;
use harmonic_schwarz::report::VerificationReport;
use harmonic_schwarz::specfun::{verify_identities, IdentityGrids};
use harmonic_schwarz::{Dimension, Result};

/// Outcome of one criterion: pass flag and a one-line summary.
type Outcome = Result<(bool, String)>;

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

/// ρ ∈ {0, 0.1, …, 0.9}.
fn tenths() -> Vec<f64> {
    (0..10).map(|i| f64::from(i) / 10.0).collect()
}

/// Tracks the worst `|a - b| / tol` ratio; below 1 means pass.
#[derive(Default)]
struct Worst {
    ratio: f64,
    note: String,
}

impl Worst {
    fn abs(&mut self, a: f64, b: f64, tol: f64, note: impl FnOnce() -> String) {
        self.push((a - b).abs() / tol, note);
    }

    fn rel(&mut self, a: f64, b: f64, tol: f64, note: impl FnOnce() -> String) {
        self.push((a - b).abs() / (tol * a.abs().max(b.abs())), note);
    }

    fn push(&mut self, r: f64, note: impl FnOnce() -> String) {
        let r = if r.is_nan() { f64::INFINITY } else { r };
        if r > self.ratio || self.note.is_empty() {
            self.ratio = r;
            self.note = note();
        }
    }

    fn ok(&self) -> bool {
        self.ratio <= 1.0
    }
}

fn failing_checks(r: &VerificationReport) -> Vec<String> {
    r.checks
        .iter()
        .filter(|c| !c.as_expected())
        .map(|c| format!("{}.{}@{:?}={:.3e}", r.suite, c.name, c.at, c.worst_margin))
        .collect()
}

fn criterion_1() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut w = Worst::default();
    for n in 3..=12 {
        let v = phi_quad(dim(n), 0.0, &spec)?.value;
        w.abs(v, 2.0 / f64::from(n - 1), 1e-10, || format!("n={n}"));
    }
    Ok((
        w.ok(),
        format!(
            "Φ(0) = 2/(n-1), n=3..12, worst err/tol {:.3} at {}",
            w.ratio, w.note
        ),
    ))
}

fn criterion_2() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut series = Worst::default();
    for n in 3..=8 {
        for rho in tenths() {
            let k = if rho <= 0.9 { 200 } else { 400 };
            let q = phi_quad(dim(n), rho, &spec)?.value;
            let s = phi_series(dim(n), rho, k)?.value;
            series.abs(q, s, 1e-8, || format!("n={n} ρ={rho}"));
        }
    }
    let mut closed = Worst::default();
    for i in 0..=100 {
        let rho = f64::from(i) / 100.0;
        let q = phi_quad(dim(3), rho, &spec)?.value;
        closed.abs(q, phi3_closed(rho), 1e-10, || format!("ρ={rho}"));
    }
    Ok((
        series.ok() && closed.ok(),
        format!(
            "quad vs series worst err/tol {:.3} at {}; quad vs n=3 closed form worst {:.3} at {}",
            series.ratio, series.note, closed.ratio, closed.note
        ),
    ))
}

fn criterion_3() -> Outcome {
    let tight = QuadratureSpec::tight();
    let mut fd = Worst::default();
    let mut series = Worst::default();
    for n in 4..=8 {
        for i in 1..=9 {
            let rho = f64::from(i) / 10.0;
            let c = phi_second_closed(dim(n), rho)?.value;
            let f = phi_second_fd(dim(n), rho, &tight)?.value;
            let s = phi_second_series(dim(n), rho, default_truncation(dim(n), rho))?.value;
            fd.rel(c, f, 1e-6, || format!("n={n} ρ={rho}"));
            series.abs(c, s, 1e-9, || format!("n={n} ρ={rho}"));
        }
    }
    Ok((
        fd.ok() && series.ok(),
        format!(
            "Φ'' closed vs finite difference worst err/tol {:.3} at {}; vs series {:.3} at {}",
            fd.ratio, fd.note, series.ratio, series.note
        ),
    ))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let mut worst = f64::INFINITY;
    for n in 4..=12 {
        let r = verify_concavity(dim(n), 1001)?;
        let c = r.check("second_derivative_negative").expect("sign check");
        worst = worst.min(c.worst_margin);
        if !c.passed {
            bad.push(format!("n={n}"));
        }
    }
    let origin = phi_second_series(dim(3), 0.0, 200)?.value;
    let rel = (origin - 1.0 / 18.0).abs() / (1.0 / 18.0);
    Ok((
        bad.is_empty() && rel <= 1e-10,
        format!(
            "Φ'' < 0 on 1001 points, n=4..12, smallest -Φ''-1e-12 = {worst:.3e}{}; n=3 Φ''(0) rel err {rel:.1e}",
            if bad.is_empty() { String::new() } else { format!(" failing {bad:?}") }
        ),
    ))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=12 {
        let r = verify_technical(dim(n), 1001)?;
        bad.extend(failing_checks(&r));
    }
    let psi_origin = (3..=12)
        .map(|n| psi(dim(n), 0.0))
        .collect::<Result<Vec<_>>>()?;
    let psi_ok = psi_origin.iter().all(|v| v.abs() <= 1e-12);
    let mut q_min = f64::INFINITY;
    for n in 4..=64 {
        for i in 0..=1000 {
            q_min = q_min.min(psi_quadratic(dim(n), f64::from(i) / 1000.0));
        }
    }
    let q4 = (0..=1000).all(|i| psi_quadratic(dim(4), f64::from(i) / 1000.0) == 128.0);
    let q5 = psi_quadratic(dim(5), 1.0) == 688.0;
    Ok((
        bad.is_empty() && psi_ok && q_min > 0.0 && q4 && q5,
        format!(
            "technical inequality n=4..12 and reversed n=3, Ψ(0)=0, Ψ' closed vs difference: {}; min Q_n (n=4..64) = {q_min}; Q_4≡128 {q4}; Q_5(1)=688 {q5}",
            if bad.is_empty() && psi_ok { "ok".to_string() } else { format!("failing {bad:?}") }
        ),
    ))
}

fn criterion_6() -> Outcome {
    let r = verify_identities(&IdentityGrids::default())?;
    let bad = failing_checks(&r);
    let margins: Vec<String> = r
        .checks
        .iter()
        .map(|c| format!("{} {:.1e}", c.name, c.worst_margin))
        .collect();
    Ok((
        r.passed,
        format!(
            "{} identity checks, margins [{}]{}",
            r.checks.len(),
            margins.join(", "),
            if bad.is_empty() {
                String::new()
            } else {
                format!(" failing {bad:?}")
            }
        ),
    ))
}

fn criterion_7() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut w = Worst::default();
    for n in 2..=8 {
        let g = extremal_gradient_at_origin(dim(n), &spec)?;
        w.abs(g, schwarz_pick_constant(dim(n)), 1e-8, || format!("n={n}"));
    }
    let k2 = schwarz_pick_constant(dim(2));
    let k3 = schwarz_pick_constant(dim(3));
    let k4 = schwarz_pick_constant(dim(4));
    let s3 = khavinson_sharp_constant_3d();
    let constants_ok = (k2 - 4.0 / PI).abs() <= 1e-14
        && (k3 - 1.5).abs() <= 1e-14
        && (s3 - 8.0 / (3.0 * 3f64.sqrt())).abs() <= 1e-14
        && (s3 - 1.5396).abs() < 5e-5
        && (k4 - 16.0 / (3.0 * PI)).abs() <= 1e-14;
    Ok((
        w.ok() && constants_ok,
        format!(
            "|∇U(0)| vs 2m_(n-1)/m_n, n=2..8, worst err/tol {:.3} at {}; constants n=2 {k2}, n=3 {k3}, n=3 sharp {s3}, n=4 {k4}",
            w.ratio, w.note
        ),
    ))
}

fn criterion_8() -> Outcome {
    let spec = QuadratureSpec::default();
    let mut w = Worst::default();
    let mut k3 = Worst::default();
    for n in 3..=8 {
        for rho in tenths() {
            let sup = sharp_radial_sup(dim(n), AxisPoint::new(rho)?, &spec)?;
            let c = capital_c(dim(n), rho, &spec)?;
            w.abs(sup, c, 1e-6, || format!("n={n} ρ={rho}"));
            if n == 3 {
                let k = khavinson_radial_3d(rho)?;
                k3.abs(sup, k, 1e-6, || format!("sup ρ={rho}"));
                k3.abs(c, k, 1e-6, || format!("C ρ={rho}"));
            }
        }
    }
    Ok((
        w.ok() && k3.ok(),
        format!(
            "sharp sup vs C(x), n=3..8, worst err/tol {:.3} at {}; n=3 vs radial formula {:.3} at {}",
            w.ratio, w.note, k3.ratio, k3.note
        ),
    ))
}

fn criterion_9() -> Outcome {
    let t: f64 = 1.0 - 1e-8;
    let v = (1.0 - t * t) * khavinson_radial_3d(t)?;
    let err = (v - khavinson_sharp_constant_3d()).abs();
    Ok((
        err <= 1e-6,
        format!("(1-t²)·radial formula at t=1-1e-8 = {v}, err {err:.2e}"),
    ))
}

fn criterion_10() -> Outcome {
    let spec = QuadratureSpec::default();
    let grid = default_probe_grid();
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [2, 3, 4, 5] {
        let out = probe_schwarz_pick(dim(n), 200, &grid, 7, &spec)?;
        let bad = failing_checks(&out.report);
        let within = out
            .report
            .check("gradient_within_bound")
            .expect("bound check");
        let attains = out
            .report
            .check("extremal_sign_attains_capital_c")
            .expect("attain check");
        let max_ratio = out.rows.iter().map(|r| r.max_ratio).fold(0.0, f64::max);
        ok &= out.report.passed;
        parts.push(format!(
            "n={n} max ratio {max_ratio:.6} bound margin {:.2e} extremal margin {:.2e}{}",
            within.worst_margin,
            attains.worst_margin,
            if bad.is_empty() {
                String::new()
            } else {
                format!(" failing {bad:?}")
            }
        ));
    }
    Ok((ok, format!("200 data × 11 radii: {}", parts.join("; "))))
}

fn criterion_11() -> Outcome {
    let spec = QuadratureSpec::default();
    let grid = default_probe_grid();
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [2, 4, 5] {
        let out = probe_conjecture(dim(n), 500, &grid, 3, &spec)?;
        let max_ratio = out.rows.iter().map(|r| r.max_ratio).fold(0.0, f64::max);
        let found = max_ratio > 1.0 + 1e-9;
        if n == 2 {
            ok &= !found && out.report.passed;
        }
        parts.push(format!(
            "n={n} max ratio {max_ratio:.6} counterexample {found}"
        ));
    }
    Ok((
        ok,
        format!(
            "refined bound probe (observational for n≥4): {}",
            parts.join("; ")
        ),
    ))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("value at origin", criterion_1),
        ("Φ route agreement", criterion_2),
        ("Φ'' route agreement", criterion_3),
        ("concavity", criterion_4),
        ("technical inequality", criterion_5),
        ("identity suite", criterion_6),
        ("extremality at origin and constants", criterion_7),
        ("pointwise constant realization", criterion_8),
        ("radial formula limit", criterion_9),
        ("random-data dominance", criterion_10),
        ("refined bound probe", criterion_11),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        all &= passed;
        println!(
            "{} criterion {:>2} ({name}): {detail} [{:.1}s]",
            if passed { "PASS" } else { "FAIL" },
            i + 1,
            started.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
