//! Prime elements of `Z[w]`, the cubic family and prime-counting helpers.

mod ideals;
pub mod rational;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{util::NeumaierSum, Eisenstein};

pub use ideals::{IdealTable, PrimeIdeal};

/// How a rational prime decomposes in `Z[w]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl Splitting {
    pub fn of_rational(p: u64) -> Self {
        match p % 3 {
            0 => Splitting::Ramified,
            1 => Splitting::Split,
            _ => Splitting::Inert,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        }
    }
}

/// A primary prime element with its norm and residue class modulo 9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimaryPrime {
    pub pi: Eisenstein,
    pub norm: u64,
    pub splitting: Splitting,
    /// `(a mod 9, b mod 9)` of `pi`.
    pub residue_mod9: (u8, u8),
}

impl PrimaryPrime {
    fn new(pi: Eisenstein, splitting: Splitting) -> Self {
        let norm = pi.norm().expect("sieved primes have small norm") as u64;
        let residue_mod9 = (pi.a.mod_floor(&9) as u8, pi.b.mod_floor(&9) as u8);
        Self { pi, norm, splitting, residue_mod9 }
    }

    /// Member of the family `pi ≡ 1 (mod 9)`.
    pub fn in_family(&self) -> bool {
        self.residue_mod9 == (1, 0)
    }

    /// The underlying rational prime.
    pub fn rational_prime(&self) -> u64 {
        match self.splitting {
            Splitting::Inert => self.pi.a.unsigned_abs() as u64,
            _ => self.norm,
        }
    }
}

/// Primary `pi = a + b*w` of norm `p` for a prime `p ≡ 1 (mod 3)`.
///
/// Of the two conjugate choices the one with `b > 0` is returned.
pub fn split_rational_prime(p: u64) -> Result<Eisenstein> {
    if p % 3 != 1 {
        return Err(Error::Precondition(format!("{p} is not ≡ 1 (mod 3)")));
    }
    if !rational::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let (x, y) = cornacchia_three(p).unwrap_or_else(|| bounded_search(p));
    let z = Eisenstein::new((x + y) as i128, (2 * y) as i128).primary_associate()?;
    Ok(if z.b > 0 { z } else { z.conj()? })
}

/// `x^2 + 3 y^2 = p` by Cornacchia's algorithm.
fn cornacchia_three(p: u64) -> Option<(u64, u64)> {
    let mut r0 = rational::sqrt_mod(p - 3, p)?;
    if 2 * r0 < p {
        r0 = p - r0;
    }
    let (mut a, mut b) = (p, r0);
    let bound = rational::isqrt(p as u128) as u64;
    while b > bound {
        (a, b) = (b, a % b);
    }
    let rest = p.checked_sub(b * b)?;
    if rest % 3 != 0 {
        return None;
    }
    let y = rational::isqrt((rest / 3) as u128) as u64;
    (3 * y * y == rest).then_some((b, y))
}

fn bounded_search(p: u64) -> (u64, u64) {
    let mut y = 0u64;
    while 3 * y * y <= p {
        let rest = p - 3 * y * y;
        let x = rational::isqrt(rest as u128) as u64;
        if x * x == rest {
            return (x, y);
        }
        y += 1;
    }
    unreachable!("every prime ≡ 1 (mod 3) is x^2 + 3y^2")
}

/// All primary primes of norm `<= limit`, sorted by norm, then by `(a, b)`.
///
/// Split rational primes contribute both conjugates, inert `q` contributes
/// `-q` (norm `q^2`). The ramified prime has no primary associate and is
/// skipped.
pub fn primary_primes(limit: u64) -> Result<Vec<PrimaryPrime>> {
    let mut out = Vec::new();
    for p in rational::sieve(limit)? {
        match Splitting::of_rational(p) {
            Splitting::Split => {
                let pi = split_rational_prime(p)?;
                out.push(PrimaryPrime::new(pi, Splitting::Split));
                out.push(PrimaryPrime::new(pi.conj()?, Splitting::Split));
            }
            Splitting::Inert if p.checked_mul(p).is_some_and(|q2| q2 <= limit) => {
                out.push(PrimaryPrime::new(Eisenstein::from_int(-(p as i128)), Splitting::Inert));
            }
            _ => {}
        }
    }
    out.sort_by_key(|q| (q.norm, q.pi.a, q.pi.b));
    Ok(out)
}

/// The family `{pi prime : pi ≡ 1 (mod 9)}` with `N(pi) <= limit`.
///
/// Conjugate pairs are both members. With `split_only` the inert members
/// `-q`, `q ≡ 8 (mod 9)`, are dropped.
pub fn sieve_family(limit: u64, split_only: bool) -> Result<Vec<PrimaryPrime>> {
    let mut out = Vec::new();
    for p in rational::sieve(limit)? {
        match Splitting::of_rational(p) {
            Splitting::Split if p % 9 == 1 => {
                let pi = PrimaryPrime::new(split_rational_prime(p)?, Splitting::Split);
                if pi.in_family() {
                    out.push(pi);
                    out.push(PrimaryPrime::new(pi.pi.conj()?, Splitting::Split));
                }
            }
            Splitting::Inert
                if !split_only && p % 9 == 8 && p.checked_mul(p).is_some_and(|q2| q2 <= limit) =>
            {
                out.push(PrimaryPrime::new(Eisenstein::from_int(-(p as i128)), Splitting::Inert));
            }
            _ => {}
        }
    }
    out.sort_by_key(|q| (q.norm, q.pi.a, q.pi.b));
    Ok(out)
}

/// Whether `z` is a prime element of `Z[w]`.
pub fn is_prime_element(z: &Eisenstein) -> Result<bool> {
    if z.is_zero() || z.is_unit() {
        return Err(Error::InvalidInput(format!("{z} is zero or a unit")));
    }
    let n = z.norm()?;
    let n = u64::try_from(n).map_err(|_| Error::InputTooLarge(z.to_string()))?;
    if rational::is_prime(n) {
        return Ok(true);
    }
    // Otherwise z must be an associate of an inert rational prime q, N = q^2.
    let q = rational::isqrt(n as u128) as u64;
    if q * q != n || q % 3 != 2 || !rational::is_prime(q) {
        return Ok(false);
    }
    Eisenstein::is_associate(z, &Eisenstein::from_int(q as i128))
}

/// Von Mangoldt function of `Q(w)` on elements: `log N(p)` when `z` is an
/// associate of a prime power `p^k`, else 0.
pub fn lambda_k(z: &Eisenstein) -> Result<f64> {
    if z.is_zero() {
        return Err(Error::InvalidInput("lambda_K(0) is undefined".into()));
    }
    let n = u64::try_from(z.norm()?).map_err(|_| Error::InputTooLarge(z.to_string()))?;
    let Some((p, k)) = rational::prime_power(n) else {
        return Ok(0.0);
    };
    Ok(match Splitting::of_rational(p) {
        Splitting::Ramified => (p as f64).ln(),
        Splitting::Inert => {
            // norms of inert powers are even powers of q
            if k % 2 == 1 {
                0.0
            } else {
                2.0 * (p as f64).ln()
            }
        }
        Splitting::Split => {
            // z = pi^i pibar^j up to a unit; a prime power iff p does not divide z
            let p = p as i128;
            if z.a % p == 0 && z.b % p == 0 {
                0.0
            } else {
                (p as f64).ln()
            }
        }
    })
}

/// `sum_{pi in family, N(pi) <= x} log N(pi)`.
pub fn chebyshev_family(x: u64) -> Result<f64> {
    let mut acc = NeumaierSum::default();
    for q in sieve_family(x, false)? {
        acc.add((q.norm as f64).ln());
    }
    Ok(acc.total())
}
