//! Truncations of the triple Dirichlet series
//! `A(s, w, z) = sum* Lambda_K(pi) L(w, chi_pi) / (N(pi)^s L(z, chi_pi))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::family::{map_members, Member};
use super::sums::DENOMINATOR_GUARD;
use super::MomentOptions;
use crate::analytic::quad::integrate;
use crate::analytic::WeightFunction;
use crate::error::{Error, Result};
use crate::lfunctions::{evaluate, Side};
use crate::primes::sieve_family;
use crate::util::ComplexSum;
use crate::C64;

/// A partial sum with the members skipped by the denominator guard.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MdsPartial {
    pub value: C64,
    pub terms: usize,
    pub flags: Vec<String>,
}

/// `Lambda_K(pi) L(w) / L(z)` for every family member of norm `<= x`.
fn coefficients(w: C64, z: C64, x: f64, opts: MomentOptions<'_>) -> Result<(Vec<Member>, Vec<Option<C64>>)> {
    let fam: Vec<Member> = sieve_family(x.floor() as u64, opts.split_only)?
        .into_iter()
        .map(|prime| Member { prime, lambda: (prime.norm as f64).ln(), weight: 1.0 })
        .collect();
    let values = map_members(Side::Hecke, &fam, &[w, z], |m, e| {
        let den = evaluate(e, z)?.0;
        if den.norm() < DENOMINATOR_GUARD {
            return Ok(None);
        }
        Ok(Some(evaluate(e, w)?.0 / den * m.lambda))
    })?;
    Ok((fam, values))
}

/// `A(s, w, z)` truncated to family primes with `N(pi) <= x`.
pub fn mds_partial(s: C64, w: C64, z: C64, x: f64, opts: MomentOptions<'_>) -> Result<MdsPartial> {
    if w.re < 0.5 || z.re <= 0.5 {
        return Err(Error::Precondition("need Re(w) >= 1/2 and Re(z) > 1/2".into()));
    }
    let (fam, values) = coefficients(w, z, x, opts)?;
    let mut sum = ComplexSum::default();
    let mut flags = Vec::new();
    for (m, v) in fam.iter().zip(&values) {
        match v {
            Some(v) => sum.add(v * (-s * (m.prime.norm as f64).ln()).exp()),
            None => flags.push(format!("{}: denominator guard", m.prime.pi)),
        }
    }
    Ok(MdsPartial { value: sum.total(), terms: fam.len(), flags })
}

/// The ratios sum recovered by Mellin inversion,
/// `(1/2 pi i) int_{(c)} A(s, 1/2 + alpha, 1/2 + beta) X^s w-hat(s) ds`,
/// with `A` truncated at `N(pi) <= 2X` and the contour cut at `|Im s| <= t_max`.
pub fn ratios_by_mellin_inversion(
    x: f64,
    alpha: C64,
    beta: C64,
    c: f64,
    t_max: f64,
    opts: MomentOptions<'_>,
) -> Result<C64> {
    let w = Complex64::new(0.5, 0.0) + alpha;
    let z = Complex64::new(0.5, 0.0) + beta;
    let (fam, values) = coefficients(w, z, 2.0 * x, opts)?;
    let pairs: Vec<(f64, C64)> =
        fam.iter().zip(&values).filter_map(|(m, v)| v.map(|v| ((x / m.prime.norm as f64).ln(), v))).collect();
    let weight: &dyn WeightFunction = opts.weight;
    let integrand = |t: f64| -> Result<C64> {
        let s = Complex64::new(c, t);
        let series: C64 = pairs.iter().map(|&(lx, v)| v * (s * lx).exp()).sum();
        Ok(series * weight.mellin(s)?)
    };
    let part = |pick: fn(C64) -> f64| {
        integrate(|t| integrand(t).map(pick).unwrap_or(f64::NAN), -t_max, t_max, 1e-9 * x)
    };
    let re = part(|z| z.re)?;
    let im = part(|z| z.im)?;
    let v = Complex64::new(re, im) / (2.0 * std::f64::consts::PI);
    if !v.is_finite() {
        return Err(Error::NumericGuard("Mellin inversion integrand failed".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::ratios_sum;

    fn c(re: f64, im: f64) -> C64 {
        Complex64::new(re, im)
    }

    #[test]
    fn stabilises_for_large_s() {
        let opts = MomentOptions::default();
        let s = c(4.0, 0.0);
        let (w, z) = (c(0.7, 0.0), c(0.9, 0.0));
        let a = mds_partial(s, w, z, 5000.0, opts).unwrap().value;
        let b = mds_partial(s, w, z, 10_000.0, opts).unwrap().value;
        assert!((a - b).norm() < 1e-8, "{a} vs {b}");
        let empty = mds_partial(s, w, z, 50.0, opts).unwrap();
        assert_eq!(empty.value, c(0.0, 0.0));
        assert_eq!(empty.terms, 0);
    }

    #[test]
    fn mellin_inversion_recovers_the_ratios_sum() {
        let opts = MomentOptions::default();
        let (alpha, beta) = (c(0.2, 0.0), c(0.35, 0.0));
        let direct = ratios_sum(1500.0, alpha, beta, opts).unwrap().lhs;
        let inverted = ratios_by_mellin_inversion(1500.0, alpha, beta, 2.0, 400.0, opts).unwrap();
        assert!((direct - inverted).norm() < 1e-6 * direct.norm(), "{direct} vs {inverted}");
    }
}
