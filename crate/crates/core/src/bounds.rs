//! Sharp constants and gradient bounds for bounded harmonic functions on the
//! unit ball.

use std::f64::consts::PI;

use serde::Serialize;

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::phi::phi_integral;
use crate::quadrature::QuadratureSpec;

/// Volume `π^{n/2} / Γ(n/2 + 1)` of the unit ball in `Rⁿ`, by the recurrence
/// `m_n = 2π m_{n-2} / n` from `m_0 = 1`, `m_1 = 2`.
pub fn ball_volume(n: u32) -> f64 {
    let mut m = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    while k <= n {
        m *= 2.0 * PI / f64::from(k);
        k += 2;
    }
    m
}

/// `2 m_{n-1}(B_{n-1}) / m_n(B_n)`, the sharp gradient bound at the centre.
pub fn schwarz_pick_constant(n: Dimension) -> f64 {
    2.0 * ball_volume(n.get() - 1) / ball_volume(n.get())
}

/// `8 / (3√3)`, the sharp constant of `(1 - |x|²)|∇u(x)|` in three dimensions.
pub fn khavinson_sharp_constant_3d() -> f64 {
    8.0 / (3.0 * 3f64.sqrt())
}

/// Sharp bound on the radial derivative at distance `t` from the centre when
/// `n = 3`:
/// `(9 - t²)² / (3√3 (1 - t²) [(t² + 3)^{3/2} + 3√3 (1 - t²)])`.
pub fn khavinson_radial_3d(t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::domain(format!("t must lie in [0, 1), got {t}")));
    }
    let u = t * t;
    let r3 = 3f64.sqrt();
    let w = (1.0 - t) * (1.0 + t);
    Ok((9.0 - u).powi(2) / (3.0 * r3 * w * ((u + 3.0).powf(1.5) + 3.0 * r3 * w)))
}

fn check_rho(rho: f64) -> Result<()> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::domain(format!("ρ must lie in [0, 1), got {rho}")));
    }
    Ok(())
}

/// The pointwise sharp constant
/// `C(x) = (n-1) m_{n-1}/m_n · Φ(|x|) / (1 - |x|²)`.
///
/// Also defined at `n = 2`, where Φ ≡ 2 and `C` reduces to `(4/π)/(1 - ρ²)`.
pub fn capital_c(n: Dimension, rho: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_rho(rho)?;
    let nf = n.as_f64();
    let phi = phi_integral(n, rho, spec)?.value;
    Ok(
        (nf - 1.0) * ball_volume(n.get() - 1) / ball_volume(n.get()) * phi
            / ((1.0 - rho) * (1.0 + rho)),
    )
}

/// The envelope `K_n / (1 - ρ²)`, with `K_3 = 8/(3√3)` and
/// `K_n = 2 m_{n-1}/m_n` otherwise. At `n = 3` the bound is never attained.
pub fn gradient_bound(n: Dimension, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let k = if n.get() == 3 {
        khavinson_sharp_constant_3d()
    } else {
        schwarz_pick_constant(n)
    };
    Ok(k / ((1.0 - rho) * (1.0 + rho)))
}

/// `m_{n-1}/m_n · osc / dist`.
pub fn pw_bound(n: Dimension, dist: f64, osc: f64) -> Result<f64> {
    if !(dist > 0.0) {
        return Err(Error::domain(format!(
            "distance must be positive, got {dist}"
        )));
    }
    if !(osc >= 0.0) {
        return Err(Error::domain(format!(
            "oscillation must be non-negative, got {osc}"
        )));
    }
    Ok(ball_volume(n.get() - 1) / ball_volume(n.get()) * osc / dist)
}

/// `4 (n-1)^{(n+1)/2} m_{n-1} / (n^{(n+2)/2} m_n)`, the gradient constant for
/// bounded harmonic functions in the half-space.
pub fn halfspace_constant(n: Dimension) -> f64 {
    let nf = n.as_f64();
    4.0 * (nf - 1.0).powf((nf + 1.0) / 2.0) * ball_volume(n.get() - 1)
        / (nf.powf((nf + 2.0) / 2.0) * ball_volume(n.get()))
}

/// One radius of a [`BoundTable`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub rho: f64,
    pub capital_c: f64,
    pub gradient_bound: f64,
    pub schwarz_pick_over_1mr2: f64,
    pub pw_over_1mr: f64,
    pub khavinson_radial: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub n: Dimension,
    pub rows: Vec<BoundRow>,
}

/// Every bound at each radius in `rho_grid`, in grid order. The
/// `khavinson_radial` column is filled only when `n = 3`.
pub fn bound_table(n: Dimension, rho_grid: &[f64], spec: &QuadratureSpec) -> Result<BoundTable> {
    let rows = rho_grid
        .iter()
        .map(|&rho| {
            Ok(BoundRow {
                rho,
                capital_c: capital_c(n, rho, spec)?,
                gradient_bound: gradient_bound(n, rho)?,
                schwarz_pick_over_1mr2: schwarz_pick_constant(n) / ((1.0 - rho) * (1.0 + rho)),
                // |u| < 1 has oscillation at most 2 on the ball
                pw_over_1mr: pw_bound(n, 1.0 - rho, 2.0)?,
                khavinson_radial: if n.get() == 3 {
                    Some(khavinson_radial_3d(rho)?)
                } else {
                    None
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { n, rows })
}
