//! Cubic Gauss sums `g_K(k, n) = sum_{x mod n} (x/n)_3 e_K(kx/n)`.
//!
//! `e_K(z) = exp(2 pi i (z - conj z)/sqrt(-3))` equals `e(v)` where `v` is
//! the `w`-coefficient of `z`, so for `z = y/n` the phase is the exact
//! rational `coef_w(y * conj n) / N(n)` reduced modulo 1.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::eisenstein::ResidueSystem;
use crate::error::{Error, Result};
use crate::primes::rational::{mul_mod, pow_mod};
use crate::primes::{primary_primes, sieve_family, PrimaryPrime, Splitting};
use crate::symbols::{cubic_symbol, omega_power, CubicValue, RayClassCharacter, ResidueField};
use crate::util::ComplexSum;
use crate::Eisenstein;

/// Residue enumeration cap for direct Gauss sums.
pub const DIRECT_CAP: u64 = 50_000_000;

/// `e(m / n)` for integers, reduced exactly before the float conversion.
#[inline]
pub fn e_ratio(m: i128, n: i128) -> Complex64 {
    let r = m.rem_euclid(n);
    Complex64::from_polar(1.0, TAU * (r as f64 / n as f64))
}

/// `e_K(y / n)` through the exact rational `w`-coefficient.
pub fn e_k(y: &Eisenstein, n: &Eisenstein) -> Result<Complex64> {
    if n.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let v = y.checked_mul(&n.conj()?)?;
    Ok(e_ratio(v.b, n.norm()?))
}

/// `e_K(z)` for a complex `z`, straight from the definition.
pub fn e_k_complex(z: Complex64) -> Complex64 {
    let sqrt_d = Complex64::new(0.0, 3f64.sqrt());
    let arg = (z - z.conj()) / sqrt_d;
    Complex64::from_polar(1.0, TAU * arg.re)
}

/// An Eisenstein integer as a complex number.
pub fn to_complex(z: &Eisenstein) -> Complex64 {
    Complex64::new(z.a as f64 - 0.5 * z.b as f64, 0.5 * 3f64.sqrt() * z.b as f64)
}

/// `g_K(k, n)` by direct summation over canonical residues, with the cubic
/// symbol evaluated by reciprocity. Works for any `n` prime to 3.
pub fn gauss_sum(k: &Eisenstein, n: &Eisenstein) -> Result<Complex64> {
    if n.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !n.is_coprime_to_three() {
        return Err(Error::NotCoprimeToThree(n.to_string()));
    }
    let rs = ResidueSystem::new(*n)?;
    let residues = rs.residues(DIRECT_CAP)?;
    let norm = n.norm()?;
    let kn = k.checked_mul(&n.conj()?)?;
    let terms: Result<Vec<Complex64>> = residues
        .par_iter()
        .map(|x| {
            let chi = cubic_symbol(x, n)?;
            if chi == CubicValue::Zero {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let coef = kn.a * x.b + kn.b * x.a - kn.b * x.b;
            Ok(chi.to_complex() * e_ratio(coef, norm))
        })
        .collect();
    Ok(terms?.into_iter().collect::<ComplexSum>().total())
}

/// `tau = sum_{x mod p} (x/pi)_3 e(x/p)` by direct summation.
pub fn tau_direct(pi: &Eisenstein) -> Result<Complex64> {
    let field = ResidueField::new(pi)?;
    let ResidueField::Split { p, .. } = field else {
        return Err(Error::Precondition(format!("{pi} is not a split prime")));
    };
    let g = primitive_root(p);
    let g_class = field.symbol_int(g as i64).exponent().expect("g is a unit") as usize;
    // class sums S_j = sum_{x : chi(x) = w^j} e(x/p), walking x = g^i
    let mut sums = [ComplexSum::default(); 3];
    let mut x = 1u64;
    for i in 0..p - 1 {
        sums[(g_class * (i as usize % 3)) % 3].add(e_ratio(x as i128, p as i128));
        x = mul_mod(x, g, p);
    }
    Ok((0..3).map(|j| omega_power(j as i64) * sums[j].total()).sum())
}

/// `tau` from the Jacobi sum identity `tau^3 = p J(chi, chi)` with
/// `J = -pi`, choosing the cube root whose real part matches the cubic Weyl
/// sum `sum_y e(y^3/p) = 2 Re tau`. Falls back to [`tau_direct`] when the
/// candidates are not separated.
pub fn tau_fast(pi: &Eisenstein) -> Result<Complex64> {
    if !pi.is_primary() {
        return Err(Error::Precondition(format!("{pi} is not primary")));
    }
    let p = match ResidueField::new(pi)? {
        ResidueField::Split { p, .. } => p,
        ResidueField::Inert { .. } => return Err(Error::Precondition(format!("{pi} is not a split prime"))),
    };
    let target = -to_complex(pi) * p as f64;
    let r = (p as f64).sqrt();
    let mut cands: Vec<Complex64> =
        (0..3).map(|k| Complex64::from_polar(r, target.arg() / 3.0 + TAU * k as f64 / 3.0)).collect();
    let half = 0.5 * weyl_cubic_sum(p);
    cands.sort_by(|a, b| (a.re - half).abs().total_cmp(&(b.re - half).abs()));
    let gap = (cands[1].re - half).abs() - (cands[0].re - half).abs();
    if gap < 1e-6 * r {
        return tau_direct(pi);
    }
    Ok(cands[0])
}

/// `sum_{y mod p} e(y^3 / p)` for a prime `p ≡ 1 (mod 3)`.
///
/// Cubes are generated by finite differences and marked on `[1, (p-1)/2]`;
/// the cosine scan uses a rotating phasor re-anchored every 256 steps.
pub fn weyl_cubic_sum(p: u64) -> f64 {
    let half = ((p - 1) / 2) as usize;
    let mut mark = vec![false; half + 1];
    let (mut c, mut d, mut e) = (0u64, 1u64, 6u64 % p);
    let add = |x: u64, y: u64| {
        let s = x + y;
        if s >= p {
            s - p
        } else {
            s
        }
    };
    for _ in 0..half {
        c = add(c, d);
        d = add(d, e);
        e = add(e, 6 % p);
        let k = c.min(p - c) as usize;
        mark[k] = true;
    }
    let step = Complex64::from_polar(1.0, TAU / p as f64);
    let mut acc = 0.0;
    let mut z = Complex64::new(1.0, 0.0);
    for (k, &m) in mark.iter().enumerate().skip(1) {
        if k % 256 == 1 {
            z = Complex64::from_polar(1.0, TAU * k as f64 / p as f64);
        } else {
            z *= step;
        }
        if m {
            acc += z.re;
        }
    }
    1.0 + 6.0 * acc
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("a prime has a primitive root")
}

/// `g_K(k, pi)` for a primary prime `pi`, using the residue-field structure:
/// for split `pi` it is `conj(chi(c)) tau` with `c = coef_w(k conj(pi))`,
/// for inert `pi = -q` a walk over a generator of `F_{q^2}^*`.
pub fn gauss_sum_prime(k: &Eisenstein, pi: &Eisenstein) -> Result<Complex64> {
    let field = ResidueField::new(pi)?;
    match field {
        ResidueField::Split { p, .. } => {
            let c = k.checked_mul(&pi.conj()?)?.b.rem_euclid(p as i128);
            match field.symbol_int(c as i64) {
                CubicValue::Zero => Ok(Complex64::new(0.0, 0.0)),
                v => Ok(v.conj().to_complex() * tau_fast(&pi.primary_associate()?)?),
            }
        }
        ResidueField::Inert { q } => inert_gauss_sum(k, pi, q, &field),
    }
}

fn inert_gauss_sum(k: &Eisenstein, pi: &Eisenstein, q: u64, field: &ResidueField) -> Result<Complex64> {
    let n = pi.norm()?;
    let kn = k.checked_mul(&pi.conj()?)?;
    let qq = q * q;
    let order = qq - 1;
    let mut factors = Vec::new();
    let mut m = order;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let fmul = |(a, b): (u64, u64), (c, d): (u64, u64)| -> (u64, u64) {
        let ac = mul_mod(a, c, q);
        let bd = mul_mod(b, d, q);
        ((ac + q - bd) % q, (mul_mod(a, d, q) + mul_mod(b, c, q) + q - bd) % q)
    };
    let fpow = |x: (u64, u64), mut e: u64| {
        let (mut acc, mut base) = ((1, 0), x);
        while e > 0 {
            if e & 1 == 1 {
                acc = fmul(acc, base);
            }
            base = fmul(base, base);
            e >>= 1;
        }
        acc
    };
    let gen = (0..q)
        .flat_map(|y| (0..q).map(move |x| (x, y)))
        .filter(|&z| z != (0, 0))
        .find(|&z| factors.iter().all(|&f| fpow(z, order / f) != (1, 0)))
        .expect("F_{q^2}^* is cyclic");
    let g_class =
        field.symbol(&Eisenstein::new(gen.0 as i128, gen.1 as i128)).exponent().expect("generator is a unit")
            as usize;
    let mut sums = [ComplexSum::default(); 3];
    let mut x = (1u64, 0u64);
    for i in 0..order {
        let (xa, xb) = (x.0 as i128, x.1 as i128);
        let coef = kn.a * xb + kn.b * xa - kn.b * xb;
        sums[(g_class * (i as usize % 3)) % 3].add(e_ratio(coef, n));
        x = fmul(x, gen);
    }
    Ok((0..3).map(|j| omega_power(j as i64) * sums[j].total()).sum())
}

/// `g_K(1, pi)` for every family prime of norm `<= limit`, in family order.
pub fn gauss_batch(limit: u64, split_only: bool) -> Result<Vec<(PrimaryPrime, Complex64)>> {
    let fam = sieve_family(limit, split_only)?;
    fam.par_iter().map(|q| Ok((*q, gauss_sum_prime(&Eisenstein::one(), &q.pi)?))).collect()
}

/// Partial sums of
/// `h(r, s; psi) = sum_{pi primary, (pi, r) = 1} Lambda_K(pi) psi(pi) g_K(r, pi) / N(pi)^s`
/// over primes `pi` with `N(pi) <= x`, returned at each `x` in `xs`.
pub fn h_partial_curve(
    r: &Eisenstein,
    s: Complex64,
    psi: &RayClassCharacter,
    xs: &[f64],
) -> Result<Vec<Complex64>> {
    let xmax = xs.iter().copied().fold(0.0, f64::max);
    if !(xmax.is_finite()) || xmax < 1.0 {
        return Err(Error::InvalidInput(format!("invalid cutoff {xmax}")));
    }
    let primes = primary_primes(xmax.floor() as u64)?;
    // one tau per split rational prime: tau(conj pi) = conj tau(pi)
    let terms: Result<Vec<(u64, Complex64)>> = primes
        .par_iter()
        .filter(|q| q.splitting == Splitting::Inert || q.pi.b > 0)
        .map(|q| -> Result<Vec<(u64, Complex64)>> {
            let pis = match q.splitting {
                Splitting::Split => vec![q.pi, q.pi.conj()?],
                _ => vec![q.pi],
            };
            let base = match q.splitting {
                Splitting::Split => Some(tau_fast(&q.pi)?),
                _ => None,
            };
            let mut out = Vec::new();
            for (i, pi) in pis.iter().enumerate() {
                let field = ResidueField::new(pi)?;
                if field.symbol(r) == CubicValue::Zero {
                    continue;
                }
                let g = match (field, base) {
                    (ResidueField::Split { p, .. }, Some(t)) => {
                        let tau = if i == 0 { t } else { t.conj() };
                        let c = r.checked_mul(&pi.conj()?)?.b.rem_euclid(p as i128);
                        field.symbol_int(c as i64).conj().to_complex() * tau
                    }
                    _ => gauss_sum_prime(r, pi)?,
                };
                let n = q.norm as f64;
                let weight = n.ln() * Complex64::new(n, 0.0).powc(-s);
                out.push((q.norm, weight * psi.eval(pi) * g));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect());
    let mut terms = terms?;
    terms.sort_by_key(|t| t.0);
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let mut out = vec![Complex64::new(0.0, 0.0); xs.len()];
    let mut acc = ComplexSum::default();
    let mut it = terms.iter().peekable();
    for i in order {
        while let Some((n, t)) = it.peek() {
            if (*n as f64) <= xs[i] {
                acc.add(*t);
                it.next();
            } else {
                break;
            }
        }
        out[i] = acc.total();
    }
    Ok(out)
}

/// Single partial sum of `h(r, s; psi)` up to `x`.
pub fn h_partial(r: &Eisenstein, s: Complex64, psi: &RayClassCharacter, x: f64) -> Result<Complex64> {
    Ok(h_partial_curve(r, s, psi, &[x])?[0])
}
