//! One-level density of low-lying zeros over the family.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::family::{map_members, members};
use super::sums::{class_number, zeta_k_j_logderiv_numeric};
use super::{MomentKind, MomentOptions, MomentReport, Shifts};
use crate::analytic::quad::integrate;
use crate::analytic::{digamma, fejer_pair, zeta_j_logderiv, zeta_k_j_logderiv, DensityTestFunction};
use crate::error::{Error, Result};
use crate::lfunctions::{find_zeros_with, Side};
use crate::util::NeumaierSum;

/// Largest zero height used for the density.
const MAX_HEIGHT: f64 = 50.0;
/// Test-function integrals are taken over `|u| <= H_RANGE` plus a tail estimate.
const H_RANGE: f64 = 400.0;

/// `int_from^to h(u) g(u) du`, one period of `h`'s oscillation at a time.
fn h_weighted<F: Fn(f64) -> Result<f64>>(
    h: &dyn DensityTestFunction,
    g: F,
    from: f64,
    to: f64,
) -> Result<f64> {
    let period = 1.0 / h.support_a();
    let mut acc = NeumaierSum::default();
    let mut lo = from;
    while lo < to {
        let hi = (lo + period).min(to);
        acc.add(integrate(|u| h.evaluate(u) * g(u).unwrap_or(f64::NAN), lo, hi, 1e-13)?);
        lo = hi;
    }
    let v = acc.total();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NumericGuard("density integrand failed".into()))
    }
}

/// `int_to^inf h(u) g(u) du` for slowly varying `g`, from the mean of `h`'s
/// envelope, `1 / (2 pi^2 a^2 u^2)`.
fn h_tail(h: &dyn DensityTestFunction, g_end: f64, to: f64) -> f64 {
    let a = h.support_a();
    g_end / (2.0 * PI * PI * a * a * to)
}

/// `int_R h(u) g(u) du` for even `g`.
fn h_integral<F: Fn(f64) -> Result<f64>>(h: &dyn DensityTestFunction, g: F) -> Result<f64> {
    let end = g(H_RANGE)?;
    Ok(2.0 * (h_weighted(h, &g, 0.0, H_RANGE)? + h_tail(h, end, H_RANGE)))
}

/// Side-dependent constants: `kappa` and the conductor constant in `2 log Q`.
fn side_constants(q_side: bool) -> (f64, f64) {
    if q_side {
        (0.5, (1.0 / PI).ln())
    } else {
        (1.0, (3.0 / (4.0 * PI * PI)).ln())
    }
}

/// Predicted density and its parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityPrediction {
    /// `int h`, in closed form
    pub leading: f64,
    /// `int h` by quadrature
    pub leading_quadrature: f64,
    /// `int h` plus the `1 / log X` correction
    pub asymptotic: f64,
    /// the prediction before expanding the family sums in `X`
    pub full: f64,
}

/// Predicted one-level density for the Fejér pair with support `a`.
///
/// `family` carries `(F, sum Lambda w log N)` for the expression that keeps
/// the family sums; without it `full` repeats `asymptotic`.
pub fn density_prediction(
    x: f64,
    a: f64,
    q_side: bool,
    family: Option<(f64, f64)>,
    opts: MomentOptions<'_>,
) -> Result<DensityPrediction> {
    let h = fejer_pair(a);
    let l = x.ln();
    let (kappa, conductor) = side_constants(q_side);
    let hat1 = h.hat_at_1();
    let mass = opts.weight.mass()?;
    let ln3 = 3f64.ln();
    let three_half = Complex64::new(1.5, 0.0);
    let (zd, _) = zeta_k_j_logderiv_numeric(three_half, q_side)?;
    let bracket = 2.0 * zd.re - 2.0 * ln3 / (3f64.sqrt() - 1.0)
        + opts.weight.log_moment()? / mass
        + 2.0 * kappa * digamma(Complex64::new(kappa * 0.5, 0.0))?.re
        + conductor;
    let leading = h.integral();
    let leading_quadrature = h_integral(&h, |_| Ok(1.0))?;
    let asymptotic = leading + 2.0 * hat1 / l * bracket;
    let full = match family {
        None => asymptotic,
        Some((f, weighted_log)) => {
            let zlog = |s: Complex64| if q_side { zeta_j_logderiv(s) } else { zeta_k_j_logderiv(s) };
            let line1 = 2.0 * hat1 / (f * l) * weighted_log;
            let members = if q_side { 4.0 } else { 2.0 };
            let line2 = members * mass / class_number() * x / l / f
                * h_integral(&h, |u| {
                    let y = 2.0 * PI * u / l;
                    let z = zlog(Complex64::new(1.5, 3.0 * y))?;
                    let e = (Complex64::new(0.5, y) * ln3).exp() - 1.0;
                    Ok((z - ln3 / e).re)
                })?;
            let line3 = 2.0 * kappa / l
                * h_integral(&h, |u| Ok(digamma(Complex64::new(0.5, 2.0 * PI * u / l) * kappa)?.re))?;
            let line4 = 2.0 * hat1 / l * conductor;
            line1 + line2 + line3 + line4
        }
    };
    Ok(DensityPrediction { leading, leading_quadrature, asymptotic, full })
}

/// `D(X; h)` from explicit zeros for the Fejér pair with support `a < 1`,
/// compared with the predicted density.
///
/// Zeros are located up to `T = min(50, a log X * 50 / (2 pi))`; the zeros
/// beyond `T` enter through their mean density.
pub fn one_level_density(x: f64, a: f64, q_side: bool, opts: MomentOptions<'_>) -> Result<MomentReport> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::Precondition("the support a must lie in (0, 1)".into()));
    }
    if x.is_nan() || x <= 3.0 {
        return Err(Error::Precondition("X must exceed 3".into()));
    }
    let h = fejer_pair(a);
    let l = x.ln();
    let height = (a * l * 50.0 / (2.0 * PI)).min(MAX_HEIGHT);
    let side = if q_side { Side::Dirichlet } else { Side::Hecke };
    let (kappa, _) = side_constants(q_side);
    let fam = members(side, x, opts.weight, opts.split_only)?;
    let scale = l / (2.0 * PI);
    // zeros beyond the height, per unit of log Q and for the Gamma factor
    let x_end = height * scale;
    let beyond = |g: &dyn Fn(f64) -> Result<f64>| -> Result<f64> {
        let far = x_end + H_RANGE;
        Ok((h_weighted(&h, g, x_end, far)? + h_tail(&h, g(far)?, far)) / scale)
    };
    let tail_log_q = beyond(&|_| Ok(1.0))?;
    let tail_gamma = beyond(&|u| Ok(digamma(Complex64::new(0.5, u / scale) * kappa)?.re))?;
    let points = [Complex64::new(0.5, height), Complex64::new(2.0, height)];
    let sums = map_members(side, &fam, &points, |m, e| {
        let zeros = find_zeros_with(e, height).map_err(|err| {
            Error::ZeroFinder(format!("conductor {} ({}): {err}", m.prime.norm, m.prime.pi))
        })?;
        let inside: f64 = zeros.ordinates.iter().map(|g| h.evaluate(g * scale)).sum();
        let q = e.handle().q;
        // both signs of the ordinate, density (log Q + kappa Re psi) / pi
        let tail = 2.0 / PI * (q.ln() * tail_log_q + kappa * tail_gamma);
        Ok((inside, tail, zeros.verified_count))
    })?;
    let mut f = NeumaierSum::default();
    let mut weighted_log = NeumaierSum::default();
    let mut num = NeumaierSum::default();
    let mut tails = NeumaierSum::default();
    let mut count = 0usize;
    for (m, (inside, tail, n)) in fam.iter().zip(&sums) {
        let lw = m.lambda * m.weight;
        f.add(lw);
        weighted_log.add(lw * (m.prime.norm as f64).ln());
        num.add(lw * (inside + tail));
        tails.add(lw * tail);
        count += n;
    }
    let f = f.total();
    if f <= 0.0 {
        return Err(Error::Precondition(format!("no family members near X = {x}")));
    }
    let d = num.total() / f;
    let pred = density_prediction(x, a, q_side, Some((f, weighted_log.total())), opts)?;
    let lhs = Complex64::new(d, 0.0);
    let main = Complex64::new(pred.asymptotic, 0.0);
    let details = [
        ("height", height),
        ("leading_integral", pred.leading),
        ("leading_quadrature", pred.leading_quadrature),
        ("asymptotic_prediction", pred.asymptotic),
        ("full_prediction", pred.full),
        ("tail_correction", tails.total() / f),
        ("zeros_located", count as f64),
        ("family_weight", f),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(MomentReport {
        kind: if q_side { MomentKind::QDensity } else { MomentKind::Density },
        x_or_q: x,
        shifts: Shifts { a: Some(a), ..Default::default() },
        lhs,
        main_term: main,
        ratio: MomentReport::ratio_of(lhs, main),
        predicted_exponent: None,
        family_size: fam.len(),
        weight_name: opts.weight.name().to_string(),
        flags: Vec::new(),
        details,
        terms: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_term_by_quadrature() {
        for a in [0.5, 0.8] {
            let p = density_prediction(1e4, a, false, None, MomentOptions::default()).unwrap();
            assert!((p.leading - 1.0 / a).abs() < 1e-12);
            assert!((p.leading_quadrature - p.leading).abs() < 1e-5, "{p:?}");
        }
        // independent of X
        let p = density_prediction(1e6, 0.5, true, None, MomentOptions::default()).unwrap();
        assert!((p.leading_quadrature - 2.0).abs() < 1e-5);
    }

    #[test]
    fn small_family_density_is_real_and_nonnegative() {
        let r = one_level_density(800.0, 0.5, false, MomentOptions::default()).unwrap();
        assert!(r.lhs.re >= 0.0 && r.lhs.im == 0.0);
        assert!(r.details["zeros_located"] > 0.0);
        assert!((r.details["leading_integral"] - 2.0).abs() < 1e-12);
    }
}
