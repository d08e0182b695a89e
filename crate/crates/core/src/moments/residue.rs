//! The residue at `s = 1` of the triple Dirichlet series, as an Euler
//! product and in closed form.

use num_complex::Complex64;

use super::sums::class_number;
use crate::analytic::zeta_k_j;
use crate::error::{Error, Result};
use crate::primes::rational::sieve;
use crate::C64;

/// `(lhs, rhs)` where `lhs` multiplies the local factors
/// `1 + (1 - N^{w-z}) N^{-3w} / (1 - N^{-3w})` over prime ideals coprime to 3
/// of norm at most `cutoff`, and `rhs` is
/// `(1/#h) (1 - 3^{-z}) / (1 - 3^{-w}) zeta_K^{(3)}(3w) / zeta_K^{(3)}(2w + z)`.
pub fn residue_identity(w: C64, z: C64, cutoff: u64) -> Result<(C64, C64)> {
    if w.re <= 1.0 / 3.0 || (w * 2.0 + z).re <= 1.0 {
        return Err(Error::Precondition("the Euler product needs Re(w) > 1/3 and Re(2w + z) > 1".into()));
    }
    let one = Complex64::new(1.0, 0.0);
    let ln3 = 3f64.ln();
    let prefactor = (one - (-z * ln3).exp()) / (one - (-w * ln3).exp()) / class_number();
    let local = |norm: f64| {
        let ln = norm.ln();
        let cube = (-w * 3.0 * ln).exp();
        (one + (one - ((w - z) * ln).exp()) * cube / (one - cube)).ln()
    };
    let mut log = Complex64::new(0.0, 0.0);
    for p in sieve(cutoff)? {
        match p % 3 {
            1 => log += local(p as f64) * 2.0,
            2 if p.saturating_mul(p) <= cutoff => log += local((p * p) as f64),
            _ => {}
        }
    }
    let lhs = prefactor * log.exp();
    let rhs = prefactor * zeta_k_j(w * 3.0)? / zeta_k_j(w * 2.0 + z)?;
    Ok((lhs, rhs))
}
