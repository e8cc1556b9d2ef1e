#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler's Γ function.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn integers_match_factorials() {
        let mut fact = 1.0f64;
        for k in 1..=40u32 {
            assert!(rel(gamma(f64::from(k)), fact) < 1e-13, "k = {k}");
            fact *= f64::from(k);
        }
    }

    #[test]
    fn half_integers_match_exact_recursion() {
        // Γ(k + 1/2) = (k - 1/2) Γ(k - 1/2), Γ(1/2) = √π
        let mut g = PI.sqrt();
        let mut x = 0.5;
        while x < 40.0 {
            assert!(rel(gamma(x), g) < 1e-13, "x = {x}");
            g *= x;
            x += 1.0;
        }
    }

    #[test]
    fn reflection_branch() {
        assert!(rel(gamma(-0.5), -2.0 * PI.sqrt()) < 1e-13);
        assert!(rel(gamma(0.25), 3.625_609_908_221_908_4) < 1e-13);
    }
}
