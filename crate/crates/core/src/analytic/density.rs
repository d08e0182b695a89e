//! Test functions for the one-level density.

use std::f64::consts::PI;

/// An even test function `h` whose Fourier transform is supported in
/// `[-a, a]`.
pub trait DensityTestFunction: Send + Sync {
    fn support_a(&self) -> f64;

    fn evaluate(&self, x: f64) -> f64;

    /// `h-hat(u) = int h(x) e(-ux) dx`.
    fn fourier(&self, u: f64) -> f64;

    /// `int h(x) dx`.
    fn integral(&self) -> f64 {
        self.fourier(0.0)
    }

    /// `int_0^inf h(x) dx`, the Mellin transform of `h` at 1.
    fn hat_at_1(&self) -> f64 {
        0.5 * self.integral()
    }
}

/// `h(x) = (sin(pi a x) / (pi a x))^2`, with `h-hat(u) = (1 - |u|/a)_+ / a`.
#[derive(Clone, Copy, Debug)]
pub struct Fejer {
    a: f64,
}

pub fn fejer_pair(a: f64) -> Fejer {
    assert!(a > 0.0, "support must be positive");
    Fejer { a }
}

impl DensityTestFunction for Fejer {
    fn support_a(&self) -> f64 {
        self.a
    }

    fn evaluate(&self, x: f64) -> f64 {
        let y = PI * self.a * x;
        if y.abs() < 1e-8 {
            1.0 - y * y / 3.0
        } else {
            (y.sin() / y).powi(2)
        }
    }

    fn fourier(&self, u: f64) -> f64 {
        ((1.0 - u.abs() / self.a) / self.a).max(0.0)
    }

    fn integral(&self) -> f64 {
        1.0 / self.a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::quad::integrate;

    #[test]
    fn fejer_closed_forms() {
        let h = fejer_pair(0.5);
        assert_eq!(h.evaluate(0.0), 1.0);
        assert_eq!(h.fourier(0.5), 0.0);
        assert_eq!(h.fourier(-0.7), 0.0);
        assert_eq!(h.integral(), 2.0);
        // the tail beyond L contributes at most 2 / (pi^2 a^2 L)
        let l = 4000.0;
        let body: f64 =
            (0..4000).map(|k| integrate(|x| h.evaluate(x), k as f64, k as f64 + 1.0, 1e-15).unwrap()).sum();
        let bound = 2.0 / (PI * PI * 0.25 * l);
        assert!((2.0 * body - 2.0).abs() < bound);
    }

    #[test]
    fn fourier_matches_quadrature() {
        let h = fejer_pair(0.8);
        for u in [0.0, 0.3, 0.6] {
            let f = |x: f64| h.evaluate(x) * (2.0 * PI * u * x).cos();
            let v: f64 =
                (0..3000).map(|k| integrate(f, k as f64, k as f64 + 1.0, 1e-15).unwrap()).sum::<f64>() * 2.0;
            assert!((v - h.fourier(u)).abs() < 2e-3, "u = {u}: {v}");
        }
    }
}
