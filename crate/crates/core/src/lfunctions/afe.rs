//! Smoothed approximate functional equation with incomplete-Gamma weights.

use num_complex::Complex64;

use super::handle::LSeriesHandle;
use crate::analytic::upper_incomplete_gamma;
use crate::error::{Error, Result};

/// Weights are dropped once `Re z` exceeds this plus `|a|`.
const WEIGHT_CUT: f64 = 45.0;

/// Rotation of the splitting point for height `t`.
fn rotation(kappa: f64, t: f64) -> f64 {
    t.signum() * (kappa * std::f64::consts::FRAC_PI_2 - 10.0 / t.abs()).max(0.0)
}

/// `sum c_n (Q/n)^a' Gamma(kappa a', (n x / Q)^{1/kappa})` with `a' = a`, or the
/// reflected sum with conjugated coefficients when `reflect` is set.
fn weighted_sum(h: &LSeriesHandle, s: Complex64, x: Complex64, reflect: bool) -> Result<Complex64> {
    let a = s * h.kappa;
    let lim = WEIGHT_CUT + a.norm();
    let zarg = x.arg() / h.kappa;
    if zarg.cos() <= 0.0 {
        return Err(Error::AccuracyBudget("splitting point rotated too far".into()));
    }
    let nmax = h.q * (lim / zarg.cos()).powf(h.kappa) / x.norm();
    if nmax > h.cutoff() as f64 {
        return Err(Error::AccuracyBudget(format!(
            "weights need coefficients up to {nmax:.0}, handle has {}",
            h.cutoff()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for &(n, c) in h.coefficients() {
        let z = (x * n as f64 / h.q).powf(1.0 / h.kappa);
        if z.re > lim {
            break;
        }
        let c = if reflect { c.conj() } else { c };
        acc += c * (s * (h.q / n as f64).ln()).exp() * upper_incomplete_gamma(a, z)?;
    }
    Ok(acc)
}

/// `Lambda(s)` split at the point `t0 e^{i theta}`.
///
/// The value does not depend on `t0`, which makes two splitting points an
/// independent check on the root number.
pub fn completed_l_split(h: &LSeriesHandle, s: Complex64, t0: f64) -> Result<Complex64> {
    let a = Complex64::from_polar(t0, rotation(h.kappa, s.im));
    let direct = weighted_sum(h, s, a, false)?;
    let dual = weighted_sum(h, Complex64::new(1.0, 0.0) - s, a.inv(), true)?;
    Ok(direct + h.root_number * dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunctions::theta::ThetaEngine;
    use crate::primes::sieve_family;

    #[test]
    fn independent_of_the_splitting_point() {
        let fam = sieve_family(3000, false).unwrap();
        for p in fam.iter().take(4) {
            let h = LSeriesHandle::hecke(&p.pi, 100_000).unwrap();
            let e = ThetaEngine::new(&h);
            for s in [Complex64::new(0.5, 3.0), Complex64::new(0.8, -14.0), Complex64::new(0.2, 30.0)] {
                let v1 = completed_l_split(&h, s, 1.0).unwrap();
                let v2 = completed_l_split(&h, s, 1.3).unwrap();
                let v3 = e.completed(s).unwrap();
                let scale = v1.norm().max(1e-300);
                assert!((v1 - v2).norm() / scale < 1e-8, "{} s = {s}: {v1} vs {v2}", p.pi);
                assert!((v1 - v3).norm() / scale < 1e-8, "{} s = {s}: {v1} vs {v3}", p.pi);
            }
        }
    }
}
