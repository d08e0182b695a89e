//! Complex Gamma, log-Gamma and digamma, generic over the float type.
//!
//! Arguments are shifted right by the recurrence until `Re z >= 12`, where
//! the Stirling series with ten Bernoulli terms is accurate to double
//! precision. Summing principal logarithms of the shift factors keeps
//! `ln_gamma` on the branch that is continuous off the negative real axis.

use num_complex::Complex;
use num_traits::{Float, FloatConst};

use crate::error::{Error, Result};

const SHIFT_TO: f64 = 12.0;

/// `B_{2k}` for `k = 1..=10`.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

#[inline]
fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("constant representable")
}

fn check_pole<T: Float>(z: Complex<T>) -> Result<()> {
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(Error::InvalidInput(format!(
            "Gamma has a pole at {}",
            z.re.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(())
}

fn shift_count<T: Float>(z: Complex<T>) -> usize {
    let need = c::<T>(SHIFT_TO) - z.re;
    if need > T::zero() {
        need.ceil().to_usize().unwrap_or(0)
    } else {
        0
    }
}

/// Principal-branch `ln Gamma(z)`.
pub fn ln_gamma<T: Float + FloatConst>(z: Complex<T>) -> Result<Complex<T>> {
    check_pole(z)?;
    let n = shift_count(z);
    let mut shift = Complex::new(T::zero(), T::zero());
    let mut w = z;
    for _ in 0..n {
        shift = shift + w.ln();
        w = w + T::one();
    }
    let half = c::<T>(0.5);
    let mut series = (w - half) * w.ln() - w + half * (T::TAU()).ln();
    let winv = w.inv();
    let winv2 = winv * winv;
    let mut pow = winv;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k2 = (2 * (k + 1)) as f64;
        series = series + pow * c::<T>(b / (k2 * (k2 - 1.0)));
        pow = pow * winv2;
    }
    Ok(series - shift)
}

/// `Gamma(z)`.
pub fn gamma<T: Float + FloatConst>(z: Complex<T>) -> Result<Complex<T>> {
    Ok(ln_gamma(z)?.exp())
}

/// `Gamma'(z) / Gamma(z)`.
pub fn digamma<T: Float + FloatConst>(z: Complex<T>) -> Result<Complex<T>> {
    check_pole(z)?;
    let n = shift_count(z);
    let mut w = z;
    let mut shift = Complex::new(T::zero(), T::zero());
    for _ in 0..n {
        shift = shift + w.inv();
        w = w + T::one();
    }
    let winv = w.inv();
    let winv2 = winv * winv;
    let mut series = w.ln() - winv * c::<T>(0.5);
    let mut pow = winv2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k2 = (2 * (k + 1)) as f64;
        series = series - pow * c::<T>(b / k2);
        pow = pow * winv2;
    }
    Ok(series - shift)
}
