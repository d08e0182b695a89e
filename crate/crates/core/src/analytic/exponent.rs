//! Error-term exponents for the shifted moments.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The predicted error exponent for a pair of shifts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftExponent {
    /// `None` stands for `alpha = infinity`.
    pub alpha: Option<Complex64>,
    /// `None` stands for `beta = infinity`.
    pub beta: Option<Complex64>,
    #[serde(rename = "E")]
    pub e: f64,
    pub delta: f64,
}

/// `E(alpha, beta)`, or `E(alpha)` when `beta` is `None`, together with
/// `delta(alpha)`.
pub fn error_exponent(alpha: Complex64, beta: Option<Complex64>) -> ShiftExponent {
    let a = alpha.re;
    let mut e =
        [0.5, 5.0 / 6.0 - a, 12.0 / 13.0 - 11.0 / 13.0 * a].into_iter().fold(f64::NEG_INFINITY, f64::max);
    if let Some(beta) = beta {
        let b = beta.re;
        e = [1.0 - b, 1.0 - 3.0 * a - 2.0 * b, 1.0 - 13.0 / 15.0 * a - 2.0 / 15.0 * b]
            .into_iter()
            .fold(e, f64::max);
    }
    let delta = if a < 0.0 { 2.0 / 11.0 } else { 0.0 };
    ShiftExponent { alpha: Some(alpha), beta, e, delta }
}

/// Exponent for the negative first moment, `max(1/2, 1 - Re beta)`.
pub fn negative_exponent(beta: Complex64) -> ShiftExponent {
    ShiftExponent { alpha: None, beta: Some(beta), e: (1.0 - beta.re).max(0.5), delta: 0.0 }
}

/// Exponent for the log-derivative moment at `alpha = beta = r`, `1 - Re r`.
pub fn logderiv_exponent(r: Complex64) -> ShiftExponent {
    ShiftExponent { alpha: Some(r), beta: Some(r), e: 1.0 - r.re, delta: 0.0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn worked_values() {
        assert_eq!(error_exponent(c(0.0), None).e, 12.0 / 13.0);
        assert!((error_exponent(c(0.2), Some(c(0.2))).e - 0.8).abs() < 1e-15);
        assert_eq!(error_exponent(c(-0.05), Some(c(1.0))).delta, 2.0 / 11.0);
        assert_eq!(error_exponent(c(0.1), None).delta, 0.0);
    }

    #[test]
    fn limits_and_derivative() {
        assert_eq!(negative_exponent(c(0.2)).e, 0.8);
        assert_eq!(negative_exponent(c(0.9)).e, 0.5);
        assert!(negative_exponent(c(1.0)).alpha.is_none());
        assert!((logderiv_exponent(c(0.45)).e - 0.55).abs() < 1e-15);
    }

    #[test]
    fn large_beta_recovers_single_shift() {
        for a in [-0.05, 0.0, 0.1, 0.3] {
            let lim = error_exponent(c(a), Some(c(1e6))).e;
            assert_eq!(lim, error_exponent(c(a), None).e);
        }
    }
}
