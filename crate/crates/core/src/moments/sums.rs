//! Shifted moments of the family and their main terms.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::family::{map_members, members, Member};
use super::{MomentKind, MomentOptions, MomentReport, Shifts, Term};
use crate::analytic::{
    error_exponent, logderiv_exponent, negative_exponent, zeta_j, zeta_k_j, ShiftExponent,
};
use crate::error::{Error, Result};
use crate::lfunctions::{check_conditioning, evaluate, Side, ThetaEngine};
use crate::symbols::RayClassGroup9;
use crate::util::ComplexSum;
use crate::C64;

/// Terms whose denominator `|L(1/2 + beta)|` falls below this are skipped.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

/// `#h_(9)`, from the enumerated ray class group.
pub(crate) fn class_number() -> f64 {
    static ORDER: OnceLock<usize> = OnceLock::new();
    *ORDER.get_or_init(|| RayClassGroup9::new().order()) as f64
}

fn half(shift: C64) -> C64 {
    shift + 0.5
}

#[derive(Clone, Copy, Debug)]
enum Stat {
    Ratio(C64, C64),
    First(C64),
    Negative(C64),
    LogDeriv(C64),
}

type Flagged = std::result::Result<C64, String>;

impl Stat {
    fn points(self) -> Vec<C64> {
        match self {
            Stat::Ratio(a, b) => vec![half(a), half(b)],
            Stat::First(a) => vec![half(a)],
            Stat::Negative(b) | Stat::LogDeriv(b) => vec![half(b)],
        }
    }

    fn conj(self) -> Self {
        match self {
            Stat::Ratio(a, b) => Stat::Ratio(a.conj(), b.conj()),
            Stat::First(a) => Stat::First(a.conj()),
            Stat::Negative(b) => Stat::Negative(b.conj()),
            Stat::LogDeriv(r) => Stat::LogDeriv(r.conj()),
        }
    }

    fn denominator(e: &ThetaEngine<'_>, beta: C64) -> Result<Flagged> {
        let l = evaluate(e, half(beta))?.0;
        Ok(if l.norm() < DENOMINATOR_GUARD {
            Err(format!("|L(1/2 + beta)| = {:e} below the denominator guard", l.norm()))
        } else {
            Ok(l)
        })
    }

    /// The statistic for the handle's own character.
    fn value(self, e: &ThetaEngine<'_>) -> Result<Flagged> {
        Ok(match self {
            Stat::Ratio(a, b) if a == b => Ok(Complex64::new(1.0, 0.0)),
            Stat::Ratio(a, b) => {
                let num = evaluate(e, half(a))?.0;
                Self::denominator(e, b)?.map(|den| num / den)
            }
            Stat::First(a) => Ok(evaluate(e, half(a))?.0),
            Stat::Negative(b) => Self::denominator(e, b)?.map(|den| den.inv()),
            Stat::LogDeriv(r) => {
                let s = half(r);
                match check_conditioning(s, evaluate(e, s)?.1) {
                    Ok(d) => Ok(d),
                    Err(err) => Err(err.to_string()),
                }
            }
        })
    }

    /// The statistic summed over the character and its conjugate.
    fn pair_value(self, e: &ThetaEngine<'_>) -> Result<Flagged> {
        let own = self.value(e)?;
        let dual = self.conj().value(e)?.map(|z| z.conj());
        Ok(own.and_then(|x| dual.map(|y| x + y)))
    }
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

fn validate(stat: Stat) -> Result<ShiftExponent> {
    match stat {
        Stat::Ratio(a, b) => {
            check(a.re > -1.0 / 11.0, "Re(alpha) must exceed -1/11")?;
            check(b.re > 0.0, "Re(beta) must be positive")?;
            let e = error_exponent(a, Some(b));
            check(e.e < 1.0, "E(alpha, beta) must be below 1")?;
            Ok(e)
        }
        Stat::First(a) => {
            check(a.re > -1.0 / 11.0, "Re(alpha) must exceed -1/11")?;
            Ok(error_exponent(a, None))
        }
        Stat::Negative(b) => {
            check(b.re > 0.0, "Re(beta) must be positive")?;
            Ok(negative_exponent(b))
        }
        Stat::LogDeriv(r) => {
            check(r.re > 0.0 && r.re < 0.5, "Re(r) must lie in (0, 1/2)")?;
            Ok(logderiv_exponent(r))
        }
    }
}

fn zeta_depleted(s: C64, q_side: bool) -> Result<C64> {
    if q_side {
        zeta_j(s)
    } else {
        zeta_k_j(s)
    }
}

/// `(zeta^{(3)})'/zeta^{(3)}(s)` by central differences with steps `1e-6`
/// and `1e-5`, for `zeta_K` or, with `q_side`, for the Riemann zeta.
///
/// The second value is set when the two steps disagree beyond `1e-6`.
pub fn zeta_k_j_logderiv_numeric(s: C64, q_side: bool) -> Result<(C64, Option<String>)> {
    let diff = |h: f64| -> Result<C64> {
        let up = zeta_depleted(s + h, q_side)?;
        let down = zeta_depleted(s - h, q_side)?;
        Ok((up - down) / (2.0 * h) / zeta_depleted(s, q_side)?)
    };
    let fine = diff(1e-6)?;
    let coarse = diff(1e-5)?;
    let flag = ((fine - coarse).norm() > 1e-6 * fine.norm().max(1.0))
        .then(|| format!("numeric zeta derivative unstable at s = {s}"));
    Ok((fine, flag))
}

fn depletion(shift: C64) -> C64 {
    Complex64::new(1.0, 0.0) - (-half(shift) * 3f64.ln()).exp()
}

fn main_term(stat: Stat, x: f64, mass: f64, q_side: bool) -> Result<(C64, Vec<String>)> {
    let base = if q_side { 2.0 } else { 1.0 } * mass * x / class_number();
    let z = |s: C64| zeta_depleted(s, q_side);
    let three_half = Complex64::new(1.5, 0.0);
    let mut flags = Vec::new();
    let v = match stat {
        Stat::Ratio(a, b) => {
            depletion(b) / depletion(a) * z(three_half + a * 3.0)? / z(three_half + a * 2.0 + b)?
        }
        Stat::First(a) => z(three_half + a * 3.0)? / depletion(a),
        Stat::Negative(b) => depletion(b),
        Stat::LogDeriv(r) => {
            let (d, flag) = zeta_k_j_logderiv_numeric(three_half + r * 3.0, q_side)?;
            flags.extend(flag);
            d - 3f64.ln() / ((half(r) * 3f64.ln()).exp() - 1.0)
        }
    };
    Ok((v * base, flags))
}

fn run(
    kind: MomentKind,
    x: f64,
    stat: Stat,
    shifts: Shifts,
    opts: MomentOptions<'_>,
) -> Result<MomentReport> {
    check(x.is_finite() && x >= 1.0, "X must be at least 1")?;
    let exponent = validate(stat)?;
    let q_side = kind.is_q_side();
    let side = if q_side { Side::Dirichlet } else { Side::Hecke };
    let fam: Vec<Member> = members(side, x, opts.weight, opts.split_only)?;
    let mut points = stat.points();
    points.extend(stat.conj().points());
    let values =
        map_members(side, &fam, &points, |_, e| if q_side { stat.pair_value(e) } else { stat.value(e) })?;
    let mut sum = ComplexSum::default();
    let mut flags = Vec::new();
    let mut terms = Vec::with_capacity(fam.len());
    for (m, v) in fam.iter().zip(values) {
        let (term, flag) = match v {
            Ok(z) => (z * (m.lambda * m.weight), None),
            Err(f) => {
                flags.push(format!("{}: {f}", m.prime.pi));
                (Complex64::new(0.0, 0.0), Some(f))
            }
        };
        if flag.is_none() {
            sum.add(term);
        }
        terms.push(Term {
            a: m.prime.pi.a,
            b: m.prime.pi.b,
            norm: m.prime.norm,
            weight: m.weight,
            lambda: m.lambda,
            re: term.re,
            im: term.im,
            flag,
        });
    }
    let (main, main_flags) = main_term(stat, x, opts.weight.mass()?, q_side)?;
    flags.extend(main_flags);
    let lhs = sum.total();
    Ok(MomentReport {
        kind,
        x_or_q: x,
        shifts,
        lhs,
        main_term: main,
        ratio: MomentReport::ratio_of(lhs, main),
        predicted_exponent: Some(exponent),
        family_size: fam.len(),
        weight_name: opts.weight.name().to_string(),
        flags,
        details: Default::default(),
        terms,
    })
}

/// Number of family members inside the weight's support at `X`.
pub fn family_size(x: f64, q_side: bool, opts: MomentOptions<'_>) -> Result<usize> {
    let side = if q_side { Side::Dirichlet } else { Side::Hecke };
    Ok(members(side, x, opts.weight, opts.split_only)?.len())
}

/// `sum Lambda_K(pi) L(1/2 + alpha) / L(1/2 + beta) w(N(pi)/X)` against
/// its main term.
pub fn ratios_sum(x: f64, alpha: C64, beta: C64, opts: MomentOptions<'_>) -> Result<MomentReport> {
    let shifts = Shifts { alpha: Some(alpha), beta: Some(beta), ..Default::default() };
    run(MomentKind::Ratios, x, Stat::Ratio(alpha, beta), shifts, opts)
}

/// `sum Lambda_K(pi) L(1/2 + alpha) w(N(pi)/X)`.
pub fn first_moment(x: f64, alpha: C64, opts: MomentOptions<'_>) -> Result<MomentReport> {
    let shifts = Shifts { alpha: Some(alpha), ..Default::default() };
    run(MomentKind::First, x, Stat::First(alpha), shifts, opts)
}

/// `sum Lambda_K(pi) / L(1/2 + beta) w(N(pi)/X)`.
pub fn negative_moment(x: f64, beta: C64, opts: MomentOptions<'_>) -> Result<MomentReport> {
    let shifts = Shifts { beta: Some(beta), ..Default::default() };
    run(MomentKind::Negative, x, Stat::Negative(beta), shifts, opts)
}

/// `sum Lambda_K(pi) L'/L(1/2 + r) w(N(pi)/X)`.
pub fn logderiv_moment(x: f64, r: C64, opts: MomentOptions<'_>) -> Result<MomentReport> {
    let shifts = Shifts { r: Some(r), ..Default::default() };
    run(MomentKind::Logderiv, x, Stat::LogDeriv(r), shifts, opts)
}

/// Rational-side statistics: each split family prime contributes both cubic
/// Dirichlet characters of conductor `N(pi)`.
///
/// `kind` may be given as either side's variant. `alpha` is ignored for the
/// negative moment and `beta` for the first moment; the log-derivative uses
/// `alpha` as `r`. The density is computed by [`super::one_level_density`].
pub fn q_side_suite(
    q: f64,
    kind: MomentKind,
    alpha: C64,
    beta: C64,
    opts: MomentOptions<'_>,
) -> Result<MomentReport> {
    let kind = kind.with_side(true);
    let (stat, shifts) = match kind {
        MomentKind::QRatios => {
            (Stat::Ratio(alpha, beta), Shifts { alpha: Some(alpha), beta: Some(beta), ..Default::default() })
        }
        MomentKind::QFirst => (Stat::First(alpha), Shifts { alpha: Some(alpha), ..Default::default() }),
        MomentKind::QNegative => (Stat::Negative(beta), Shifts { beta: Some(beta), ..Default::default() }),
        MomentKind::QLogderiv => (Stat::LogDeriv(alpha), Shifts { r: Some(alpha), ..Default::default() }),
        _ => return Err(Error::InvalidInput("use one_level_density for the density".into())),
    };
    run(kind, q, stat, shifts, opts)
}
