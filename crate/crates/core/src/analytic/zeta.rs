//! Riemann, Hurwitz and Dedekind zeta functions of `Q(w)`.

use std::sync::OnceLock;

use num_complex::{Complex, Complex64};
use num_traits::{Float, FloatConst};

use super::incgamma::exp_integral_e1;
use crate::error::{Error, Result};
use crate::primes::rational::sieve;

/// `B_{2j} / (2j)!` for `j = 1..=12`.
const EM_COEFF: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
    77_683.0 / 1_096_259_933_808_640_000_000.0,
    -236_364_091.0 / 9_545_140_416_085_299_200_000_000.0,
];

#[inline]
fn c<T: Float>(x: f64) -> T {
    T::from(x).expect("constant representable")
}

fn check_pole<T: Float>(s: Complex<T>) -> Result<()> {
    if s.im == T::zero() && s.re == T::one() {
        return Err(Error::InvalidInput("zeta has a pole at s = 1".into()));
    }
    Ok(())
}

/// Hurwitz zeta `zeta(s, a)` and its `s`-derivative, for `a > 0`.
///
/// Euler-Maclaurin summation with the cut placed beyond `|s|`.
pub fn hurwitz_with_derivative<T: Float + FloatConst>(
    s: Complex<T>,
    a: T,
) -> Result<(Complex<T>, Complex<T>)> {
    check_pole(s)?;
    if a <= T::zero() {
        return Err(Error::InvalidInput("Hurwitz parameter must be positive".into()));
    }
    let zero = Complex::new(T::zero(), T::zero());
    let cut = (s.norm() + c::<T>(12.0)).ceil().to_usize().unwrap_or(12).max(12);
    let (mut val, mut der) = (zero, zero);
    for k in 0..cut {
        let x = c::<T>(k as f64) + a;
        let lx = x.ln();
        let t = (-s * lx).exp();
        val = val + t;
        der = der - t * lx;
    }
    let x = c::<T>(cut as f64) + a;
    let lx = x.ln();
    let one = T::one();
    let xs = (-s * lx).exp();
    let sm1 = s - one;
    let tail = xs * x / sm1;
    val = val + tail + xs * c::<T>(0.5);
    der = der - tail * lx - tail / sm1 - xs * lx * c::<T>(0.5);
    // P_j(s) = s (s+1) ... (s+2j-2), carried with its derivative
    let mut p = s;
    let mut dp = Complex::new(one, T::zero());
    let mut xpow = xs / x;
    let x2 = x * x;
    for (j, coeff) in EM_COEFF.iter().enumerate() {
        let cf = c::<T>(*coeff);
        val = val + p * xpow * cf;
        der = der + (dp - p * lx) * xpow * cf;
        let f1 = s + c::<T>((2 * j + 1) as f64);
        let f2 = s + c::<T>((2 * j + 2) as f64);
        dp = dp * f1 * f2 + p * (f1 + f2);
        p = p * f1 * f2;
        xpow = xpow / x2;
    }
    Ok((val, der))
}

pub fn hurwitz_zeta<T: Float + FloatConst>(s: Complex<T>, a: T) -> Result<Complex<T>> {
    Ok(hurwitz_with_derivative(s, a)?.0)
}

/// Riemann `zeta(s)`.
pub fn riemann_zeta<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    hurwitz_zeta(s, T::one())
}

/// `zeta'(s) / zeta(s)`.
pub fn riemann_zeta_logderiv<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    let (v, d) = hurwitz_with_derivative(s, T::one())?;
    Ok(d / v)
}

/// `L(s, chi_{-3})` and its derivative, from
/// `L = 3^{-s} (zeta(s, 1/3) - zeta(s, 2/3))`.
fn l_minus3_with_derivative<T: Float + FloatConst>(s: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
    let three = c::<T>(3.0);
    let (v1, d1) = hurwitz_with_derivative(s, T::one() / three)?;
    let (v2, d2) = hurwitz_with_derivative(s, c::<T>(2.0) / three)?;
    let f = (-s * three.ln()).exp();
    let diff = v1 - v2;
    Ok((f * diff, f * (d1 - d2) - f * diff * three.ln()))
}

/// `L(s, chi_{-3})` for the non-trivial character modulo 3.
pub fn dirichlet_l_minus3<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    Ok(l_minus3_with_derivative(s)?.0)
}

/// Dedekind `zeta_K(s) = zeta(s) L(s, chi_{-3})`.
pub fn zeta_k<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    Ok(riemann_zeta(s)? * dirichlet_l_minus3(s)?)
}

/// `zeta_K'(s) / zeta_K(s)`.
pub fn zeta_k_logderiv<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    let (l, dl) = l_minus3_with_derivative(s)?;
    Ok(riemann_zeta_logderiv(s)? + dl / l)
}

fn depletion<T: Float + FloatConst>(s: Complex<T>) -> Complex<T> {
    -(-s * c::<T>(3.0).ln()).exp() + T::one()
}

/// `d/ds log(1 - 3^{-s}) = log 3 / (3^s - 1)`.
fn depletion_logderiv<T: Float + FloatConst>(s: Complex<T>) -> Complex<T> {
    let l3 = c::<T>(3.0).ln();
    ((s * l3).exp() - T::one()).inv() * l3
}

/// `zeta_K` with the Euler factor at the prime above 3 removed.
pub fn zeta_k_j<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    Ok(zeta_k(s)? * depletion(s))
}

pub fn zeta_k_j_logderiv<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    Ok(zeta_k_logderiv(s)? + depletion_logderiv(s))
}

/// Riemann `zeta` with the Euler factor at 3 removed.
pub fn zeta_j<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    Ok(riemann_zeta(s)? * depletion(s))
}

pub fn zeta_j_logderiv<T: Float + FloatConst>(s: Complex<T>) -> Result<Complex<T>> {
    Ok(riemann_zeta_logderiv(s)? + depletion_logderiv(s))
}

/// Default prime-ideal norm bound for [`zeta_k_euler`].
pub const EULER_LIMIT: u64 = 4_000_000;

fn euler_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(EULER_LIMIT).expect("limit below sieve cap"))
}

/// `zeta_K(s)` as a product over prime ideals of norm at most `limit`.
///
/// The omitted primes are replaced by the prime ideal theorem estimate
/// `sum_{N p > P} N p^{-s} ≈ E_1((s - 1) log P)`. The remaining error is of
/// the order of `P^{1/2 - Re s}`.
pub fn zeta_k_euler(s: Complex64, limit: u64) -> Result<Complex64> {
    check_pole(s)?;
    if s.re <= 1.0 {
        return Err(Error::InvalidInput("Euler product needs Re(s) > 1".into()));
    }
    let owned;
    let primes: &[u64] = if limit <= EULER_LIMIT {
        euler_primes()
    } else {
        owned = sieve(limit)?;
        &owned
    };
    let mut log_sum = Complex64::new(0.0, 0.0);
    let local = |norm: f64| -(Complex64::new(1.0, 0.0) - (-s * norm.ln()).exp()).ln();
    for &p in primes.iter().take_while(|&&p| p <= limit) {
        match p % 3 {
            0 => log_sum += local(p as f64),
            1 => log_sum += local(p as f64) * 2.0,
            _ => {
                let q = p as f64 * p as f64;
                if q <= limit as f64 {
                    log_sum += local(q);
                }
            }
        }
    }
    log_sum += exp_integral_e1((s - 1.0) * (limit as f64).ln())?;
    Ok(log_sum.exp())
}
