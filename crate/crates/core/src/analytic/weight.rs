//! Smooth weights supported in `(1, 2)` and their Mellin transforms.

use num_complex::Complex64;

use super::quad::{integrate, tanh_sinh};
use crate::error::Result;

const QUAD_TOL: f64 = 1e-14;

/// A smooth nonnegative weight `w` compactly supported in `(1, 2)`.
pub trait WeightFunction: Send + Sync {
    fn name(&self) -> &str;

    fn evaluate(&self, t: f64) -> f64;

    /// `w-hat(s) = int w(t) t^{s-1} dt`.
    fn mellin(&self, s: Complex64) -> Result<Complex64> {
        let re =
            integrate(|t| self.evaluate(t) * t.powf(s.re - 1.0) * (s.im * t.ln()).cos(), 1.0, 2.0, QUAD_TOL)?;
        let im =
            integrate(|t| self.evaluate(t) * t.powf(s.re - 1.0) * (s.im * t.ln()).sin(), 1.0, 2.0, QUAD_TOL)?;
        Ok(Complex64::new(re, im))
    }

    /// `w-hat(1) = int w(t) dt`.
    fn mass(&self) -> Result<f64> {
        integrate(|t| self.evaluate(t), 1.0, 2.0, QUAD_TOL)
    }

    /// `int w(u) log u du`.
    fn log_moment(&self) -> Result<f64> {
        integrate(|t| self.evaluate(t) * t.ln(), 1.0, 2.0, QUAD_TOL)
    }
}

/// `w(t) = exp(-1/(t-1) - 1/(2-t))` on `(1, 2)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Bump {
    scale: f64,
}

impl Bump {
    pub const fn new() -> Self {
        Self { scale: 1.0 }
    }

    /// The same bump multiplied by `scale > 0`.
    pub fn scaled(scale: f64) -> Self {
        Self { scale }
    }

    /// `w-hat(1)` by tanh-sinh, independent of [`WeightFunction::mass`].
    pub fn mass_tanh_sinh(&self) -> Result<f64> {
        tanh_sinh(|t| self.evaluate(t), 1.0, 2.0, 1e-15)
    }
}

impl WeightFunction for Bump {
    fn name(&self) -> &str {
        "bump"
    }

    fn evaluate(&self, t: f64) -> f64 {
        if t <= 1.0 || t >= 2.0 {
            0.0
        } else {
            self.scale * (-1.0 / (t - 1.0) - 1.0 / (2.0 - t)).exp()
        }
    }
}

/// Looks up a built-in weight by name.
pub fn weight_by_name(name: &str) -> Option<Bump> {
    (name == "bump").then(Bump::new)
}
