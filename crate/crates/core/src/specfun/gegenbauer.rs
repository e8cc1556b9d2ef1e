use crate::error::{Error, Result};

/// Arguments of one Gegenbauer evaluation `C_k^λ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerSpec {
    pub lambda: f64,
    pub degree: usize,
    pub x: f64,
}

impl GegenbauerSpec {
    pub fn new(lambda: f64, degree: usize, x: f64) -> Self {
        Self { lambda, degree, x }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > -0.5) {
            return Err(Error::domain(format!(
                "Gegenbauer parameter must exceed -1/2, got {}",
                self.lambda
            )));
        }
        if !(self.x.abs() <= 1.0) {
            return Err(Error::domain(format!(
                "Gegenbauer argument must lie in [-1, 1], got {}",
                self.x
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self) -> Result<f64> {
        self.validate()?;
        Ok(gegenbauer_unchecked(self.lambda, self.degree, self.x))
    }
}

/// `C_k^λ(x)` by the three-term recurrence in the degree.
pub fn gegenbauer(lambda: f64, degree: usize, x: f64) -> Result<f64> {
    GegenbauerSpec::new(lambda, degree, x).evaluate()
}

/// `[C_0^λ(x), …, C_K^λ(x)]` for `K = max_degree`.
///
/// No parameter checks: the recurrence is also used for `λ ≤ -1/2`, where
/// the polynomials are still well defined.
pub fn gegenbauer_sequence(lambda: f64, max_degree: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_degree + 1);
    out.push(1.0);
    if max_degree == 0 {
        return out;
    }
    out.push(2.0 * lambda * x);
    for k in 2..=max_degree {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * x * out[k - 1]
            - (kf + 2.0 * lambda - 2.0) * out[k - 2])
            / kf;
        out.push(next);
    }
    out
}

pub(crate) fn gegenbauer_unchecked(lambda: f64, degree: usize, x: f64) -> f64 {
    match degree {
        0 => 1.0,
        1 => 2.0 * lambda * x,
        _ => {
            let (mut c0, mut c1) = (1.0, 2.0 * lambda * x);
            for k in 2..=degree {
                let kf = k as f64;
                let c2 = (2.0 * (kf + lambda - 1.0) * x * c1 - (kf + 2.0 * lambda - 2.0) * c0) / kf;
                c0 = c1;
                c1 = c2;
            }
            c1
        }
    }
}
