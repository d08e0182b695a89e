//! Hecke L-functions of cubic characters over `Q(w)` and the induced cubic
//! Dirichlet L-functions over `Q`.
//!
//! Values inside the critical region come from the rotated theta integral in
//! [`ThetaEngine`]; the incomplete-Gamma approximate functional equation is
//! kept as an independent reference.

mod afe;
mod handle;
mod theta;
mod zeros;

use num_complex::Complex64;

pub use afe::completed_l_split;
pub use handle::{LSeriesHandle, Side};
pub use theta::{Rotated, ThetaEngine, SIGMA_RANGE};
pub use zeros::{argument_count, find_zeros, find_zeros_with, ZeroList};

use crate::error::{Error, Result};
use crate::gauss::tau_direct;
use crate::Eisenstein;

/// Target for the rigorous Dirichlet-series tail bound.
pub const DIRECT_TAIL: f64 = 1e-9;
/// `|L / L'|` below this is treated as sitting on a zero.
pub const ZERO_PROXIMITY: f64 = 1e-3;

/// Evaluation strategy for [`hecke_l`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Dirichlet series with a rigorous tail bound; needs `Re s` well above 1.
    Direct,
    /// Theta integral of the completed function.
    Completed,
    /// `L(s) = W Lambda(1 - s, conj chi) / (Q^s Gamma(kappa s))`.
    Reflected,
    /// `Direct` when its tail bound is met, otherwise `Completed`.
    Auto,
}

/// Upper bound for `sum_{n > m} |c_n| n^{-sigma}`.
///
/// Uses `#{ideals of norm <= x} <= c1 x + c2 sqrt(x) + 1`, which also bounds
/// the count of rational integers, and partial summation.
pub fn tail_bound(sigma: f64, m: u64) -> f64 {
    if sigma <= 1.0 {
        return f64::INFINITY;
    }
    let c1 = std::f64::consts::PI / (3.0 * 3f64.sqrt());
    let c2 = 4.0;
    let m = m as f64;
    sigma
        * (c1.max(1.0) * m.powf(1.0 - sigma) / (sigma - 1.0)
            + c2 * m.powf(0.5 - sigma) / (sigma - 0.5)
            + m.powf(-sigma) / sigma)
}

/// Smallest power-of-two multiple of 1024 that meets [`DIRECT_TAIL`].
fn direct_length(sigma: f64) -> Option<u64> {
    let mut m = 1024u64;
    while m < 1 << 40 {
        if tail_bound(sigma, m) <= DIRECT_TAIL {
            return Some(m);
        }
        m *= 2;
    }
    None
}

fn direct(h: &LSeriesHandle, s: Complex64) -> Result<(Complex64, Complex64)> {
    match direct_length(s.re) {
        Some(m) if m <= h.cutoff() => Ok(h.partial_sum(s, m)),
        _ => Err(Error::AccuracyBudget(format!(
            "tail bound unreachable at Re(s) = {} with cutoff {}",
            s.re,
            h.cutoff()
        ))),
    }
}

/// `L(s, chi)` for the character of the handle.
pub fn hecke_l(h: &LSeriesHandle, s: Complex64, mode: Mode) -> Result<Complex64> {
    match mode {
        Mode::Direct => Ok(direct(h, s)?.0),
        Mode::Completed => ThetaEngine::new(h).l_value(s),
        Mode::Reflected => reflected(&ThetaEngine::new(h), s),
        Mode::Auto => match direct(h, s) {
            Ok(v) => Ok(v.0),
            Err(_) => ThetaEngine::new(h).l_value(s),
        },
    }
}

/// `L(s, chi)` through the functional equation and `Lambda(1 - conj s, chi)`.
pub fn reflected(e: &ThetaEngine<'_>, s: Complex64) -> Result<Complex64> {
    let h = e.handle();
    if theta::trivial_zero(h.kappa, s) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sr = Complex64::new(1.0, 0.0) - s.conj();
    let dual = e.completed(sr)?.conj();
    Ok(h.root_number * dual * (-h.log_gamma_factor(s)?).exp())
}

/// `Lambda(s, chi)` by the approximate functional equation.
pub fn completed_l(h: &LSeriesHandle, s: Complex64) -> Result<Complex64> {
    completed_l_split(h, s, 1.0)
}

/// `L'(s) / L(s)`.
///
/// Fails with a numeric guard when `s` lies within [`ZERO_PROXIMITY`] of a
/// zero, judged by `|L / L'|`.
pub fn log_deriv(h: &LSeriesHandle, s: Complex64) -> Result<Complex64> {
    let d = match direct(h, s) {
        Ok((v, dv)) => dv / v,
        Err(_) => ThetaEngine::new(h).l_logderiv(s)?,
    };
    check_conditioning(s, d)
}

pub(crate) fn check_conditioning(s: Complex64, d: Complex64) -> Result<Complex64> {
    if !d.is_finite() || d.norm().recip() < ZERO_PROXIMITY {
        return Err(Error::NumericGuard(format!("L'/L ill-conditioned at s = {s}: near a zero")));
    }
    Ok(d)
}

/// `(L(s), L'(s) / L(s))` from the theta integral, or from the Dirichlet
/// series to the right of [`SIGMA_RANGE`].
pub fn evaluate(e: &ThetaEngine<'_>, s: Complex64) -> Result<(Complex64, Complex64)> {
    if s.re > SIGMA_RANGE.1 {
        let (v, dv) = direct(e.handle(), s)?;
        return Ok((v, dv / v));
    }
    let r = e.rotated(s)?;
    let h = e.handle();
    let lg = h.log_gamma_factor(s)?;
    let value = r.g * (Complex64::new(0.0, r.theta) * s - lg).exp();
    let ld = r.lambda_logderiv() - h.q.ln() - crate::analytic::digamma(s * h.kappa)? * h.kappa;
    Ok((value, ld))
}

/// Coefficient count that lets [`evaluate`] reach `s`.
pub fn cutoff_for(side: Side, conductor_norm: u64, s: Complex64) -> u64 {
    let theta = LSeriesHandle::required_cutoff(side, conductor_norm, s.im.abs());
    if s.re > SIGMA_RANGE.1 {
        theta.max(direct_length(s.re).unwrap_or(u64::MAX))
    } else {
        theta
    }
}

/// `L_Q(s, chi)` for `chi(n) = (n / pi)_3`, `N(pi) = p` split.
pub fn dirichlet_l(pi: &Eisenstein, s: Complex64, mode: Mode) -> Result<Complex64> {
    let p = pi.norm()? as u64;
    let t = s.im.abs().max(10.0);
    let cut = LSeriesHandle::required_cutoff(Side::Dirichlet, p, t);
    let cut = match (mode, direct_length(s.re)) {
        (Mode::Direct | Mode::Auto, Some(m)) => m.max(cut),
        _ => cut,
    };
    let h = LSeriesHandle::dirichlet(pi, cut)?;
    hecke_l(&h, s, mode)
}

/// `tau(chi) = sum_{x mod p} chi(x) e(x / p)` for the induced character.
pub fn induced_tau(pi: &Eisenstein) -> Result<Complex64> {
    let n = pi.norm()?;
    if crate::primes::rational::is_prime(n as u64) && n % 3 == 1 {
        tau_direct(pi)
    } else {
        Err(Error::Precondition(format!("{pi} does not lie over a split prime")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::zeta_k_euler;
    use crate::gauss::gauss_sum_prime;
    use crate::primes::{sieve_family, IdealTable};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `L(s, chi)` as a product over prime ideals of norm `<= limit`.
    fn euler_product(h: &LSeriesHandle, s: Complex64, limit: u64) -> Complex64 {
        let table = IdealTable::new(limit).unwrap();
        let field = crate::symbols::ResidueField::new(&h.pi).unwrap();
        let mut log = c(0.0, 0.0);
        for p in table.primes() {
            let chi = field.symbol(&p.generator).to_complex();
            log -= (c(1.0, 0.0) - chi * (-s * (p.norm as f64).ln()).exp()).ln();
        }
        log.exp()
    }

    #[test]
    fn direct_agrees_with_euler_product_at_two() {
        let fam = sieve_family(2000, true).unwrap();
        let m = 2_000_000;
        let table = IdealTable::new(m).unwrap();
        let h = LSeriesHandle::hecke_with_table(&fam[1].pi, &table, m).unwrap();
        let s = c(2.0, 0.0);
        let a = h.partial_sum(s, m).0;
        let b = euler_product(&h, s, m);
        assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        // sanity of the product machinery on the trivial character
        assert!((zeta_k_euler(s, 1_000_000).unwrap().re - 1.285_190_955_484_149).abs() < 1e-8);
    }

    #[test]
    fn direct_mode_reports_unreachable_tail() {
        let fam = sieve_family(200, true).unwrap();
        let h = LSeriesHandle::hecke(&fam[0].pi, 10_000).unwrap();
        assert!(matches!(hecke_l(&h, c(1.5, 0.0), Mode::Direct), Err(Error::AccuracyBudget(_))));
        let h = LSeriesHandle::hecke(&fam[0].pi, 4_000_000).unwrap();
        let d = hecke_l(&h, c(2.5, 1.0), Mode::Direct).unwrap();
        let t = hecke_l(&h, c(2.5, 1.0), Mode::Completed).unwrap();
        assert!((d - t).norm() < 1e-9);
    }

    #[test]
    fn reflected_agrees_with_series_at_two() {
        let fam = sieve_family(3000, false).unwrap();
        for p in fam.iter().take(5) {
            let h = LSeriesHandle::hecke(&p.pi, 2_000_000).unwrap();
            let e = ThetaEngine::new(&h);
            for t in [0.0, 6.5, -12.0] {
                let s = c(2.0, t);
                let series = h.partial_sum(s, h.cutoff()).0;
                let refl = reflected(&e, s).unwrap();
                assert!((series - refl).norm() < 1e-6, "{} s = {s}", p.pi);
            }
        }
    }

    #[test]
    fn functional_equation_residual() {
        let fam = sieve_family(5000, false).unwrap();
        for p in fam.iter().step_by(7).take(4) {
            let n = p.norm;
            let h =
                LSeriesHandle::hecke(&p.pi, LSeriesHandle::required_cutoff(Side::Hecke, n, 40.0)).unwrap();
            let hb = h.conj();
            for s in [c(0.3, 2.0), c(0.9, -17.0), c(0.5, 33.0), c(-0.2, 5.0)] {
                let a = completed_l_split(&h, s, 1.0).unwrap();
                let b = completed_l_split(&hb, c(1.0, 0.0) - s, 1.3).unwrap();
                let scale = a.norm().max(1e-300);
                assert!((a - h.root_number * b).norm() / scale < 1e-6, "{} s = {s}", p.pi);
            }
        }
    }

    #[test]
    fn conjugate_character_values() {
        let pi = sieve_family(2000, true).unwrap()[2].pi;
        let h = LSeriesHandle::hecke(&pi, 100_000).unwrap();
        let hb = h.conj();
        let s = c(0.5, 0.0);
        let a = hecke_l(&h, s, Mode::Completed).unwrap();
        let b = hecke_l(&hb, s, Mode::Completed).unwrap();
        assert!((a.conj() - b).norm() < 1e-10);
        let s = c(0.7, 4.0);
        let a = log_deriv(&h, s).unwrap();
        let b = log_deriv(&hb, s.conj()).unwrap();
        assert!((a.conj() - b).norm() < 1e-9);
    }

    #[test]
    fn reflected_and_completed_agree_in_the_strip() {
        let pi = sieve_family(3000, false).unwrap()[5].pi;
        let h = LSeriesHandle::hecke(&pi, 200_000).unwrap();
        let e = ThetaEngine::new(&h);
        for s in [c(0.25, 3.0), c(0.75, -9.0), c(0.5, 21.0)] {
            let a = e.l_value(s).unwrap();
            let b = reflected(&e, s).unwrap();
            assert!((a - b).norm() < 1e-8 * a.norm().max(1.0), "s = {s}");
        }
    }

    #[test]
    fn log_derivative_matches_finite_differences() {
        let fam = sieve_family(5000, false).unwrap();
        for p in fam.iter().take(10) {
            let h = LSeriesHandle::hecke(&p.pi, 200_000).unwrap();
            let e = ThetaEngine::new(&h);
            let s = c(0.8, 0.0);
            let step = 1e-4;
            let fd = (e.l_value(s + step).unwrap() - e.l_value(s - step).unwrap())
                / (2.0 * step)
                / e.l_value(s).unwrap();
            let ld = e.l_logderiv(s).unwrap();
            assert!((fd - ld).norm() < 1e-4, "{}: {fd} vs {ld}", p.pi);
        }
        let h = LSeriesHandle::hecke(&fam[0].pi, 4_000_000).unwrap();
        let s = c(2.0, 1.0);
        let (v, dv) = h.partial_sum(s, h.cutoff());
        let ld = ThetaEngine::new(&h).l_logderiv(s).unwrap();
        assert!((dv / v - ld).norm() < 1e-8);
    }

    #[test]
    fn dirichlet_side() {
        for p in sieve_family(10_000, true).unwrap().iter().take(30) {
            let tau = induced_tau(&p.pi).unwrap();
            let g = gauss_sum_prime(&Eisenstein::one(), &p.pi).unwrap();
            assert!((tau - g).norm() < 1e-8 * tau.norm());
        }
        let pi = sieve_family(3000, true).unwrap()[4].pi;
        let h = LSeriesHandle::dirichlet(&pi, 50_000).unwrap();
        let hb = h.conj();
        let e = ThetaEngine::new(&h);
        let eb = ThetaEngine::new(&hb);
        for s in [c(0.4, 1.0), c(0.5, -25.0), c(1.2, 8.0)] {
            let a = e.completed(s).unwrap();
            let b = eb.completed(c(1.0, 0.0) - s).unwrap();
            assert!((a - h.root_number * b).norm() < 1e-8 * a.norm(), "s = {s}");
            let afe = completed_l(&h, s).unwrap();
            assert!((a - afe).norm() < 1e-8 * a.norm(), "s = {s}");
        }
        let inert = sieve_family(10_000, false)
            .unwrap()
            .into_iter()
            .find(|p| p.splitting == crate::primes::Splitting::Inert)
            .unwrap();
        assert!(dirichlet_l(&inert.pi, c(2.0, 0.0), Mode::Auto).is_err());
        assert!(induced_tau(&inert.pi).is_err());
    }
}
