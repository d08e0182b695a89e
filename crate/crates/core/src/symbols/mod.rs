//! Cubic residue symbols, fast residue-field evaluation and the ray class
//! group modulo 9.

mod field;
mod ray_class;

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::eisenstein::ResidueSystem;
use crate::error::{Error, Result};
use crate::primes::is_prime_element;
use crate::Eisenstein;

pub use field::ResidueField;
pub use ray_class::{RayClassCharacter, RayClassGroup9};

/// A value of a cubic symbol: `0` or a cube root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicValue {
    Zero,
    /// `w^k` with `k` in `0..3`
    Root(u8),
}

impl CubicValue {
    pub const ONE: Self = CubicValue::Root(0);

    pub fn root(k: i64) -> Self {
        CubicValue::Root(k.rem_euclid(3) as u8)
    }

    /// Exponent `k` with value `w^k`, or `None` for zero.
    pub fn exponent(&self) -> Option<u8> {
        match self {
            CubicValue::Zero => None,
            CubicValue::Root(k) => Some(*k),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            CubicValue::Zero => CubicValue::Zero,
            CubicValue::Root(k) => CubicValue::root(-(*k as i64)),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (CubicValue::Root(a), CubicValue::Root(b)) => CubicValue::root((*a + *b) as i64),
            _ => CubicValue::Zero,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            CubicValue::Zero => Complex64::new(0.0, 0.0),
            CubicValue::Root(k) => omega_power(*k as i64),
        }
    }

    /// The value as an element of `Z[w]`.
    pub fn to_eisenstein(&self) -> Eisenstein {
        match self {
            CubicValue::Zero => Eisenstein::zero(),
            CubicValue::Root(0) => Eisenstein::one(),
            CubicValue::Root(1) => Eisenstein::omega(),
            CubicValue::Root(_) => Eisenstein::omega_sq(),
        }
    }
}

impl fmt::Display for CubicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicValue::Zero => "0",
            CubicValue::Root(0) => "1",
            CubicValue::Root(1) => "w",
            CubicValue::Root(_) => "w^2",
        })
    }
}

/// `w^k` as a complex number, exact in the sense of using fixed constants.
pub fn omega_power(k: i64) -> Complex64 {
    const H: f64 = 0.866_025_403_784_438_6;
    match k.rem_euclid(3) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(-0.5, H),
        _ => Complex64::new(-0.5, -H),
    }
}

/// Exponent of `(w / n)_3` for primary `n = a + b w`: `(1 - a - b) / 3`.
fn omega_supplement(n: &Eisenstein) -> i64 {
    Integer::div_floor(&(1 - n.a - n.b), &3).rem_euclid(3) as i64
}

/// Exponent of `((1 - w) / n)_3` for primary `n`: `2 (1 - a) / 3`.
fn ramified_supplement(n: &Eisenstein) -> i64 {
    (2 * Integer::div_floor(&(1 - n.a), &3)).rem_euclid(3) as i64
}

/// Exponent `j` of a unit `u = ±w^j`.
fn unit_exponent(u: &Eisenstein) -> i64 {
    let w = Eisenstein::omega();
    let mut z = Eisenstein::one();
    for j in 0..3 {
        if *u == z || *u == -z {
            return j;
        }
        z = z * w;
    }
    unreachable!("argument is a unit")
}

/// The cubic residue symbol `(a / n)_3` for `n` prime to 3.
///
/// Evaluated with cubic reciprocity and its supplements, so `n` need not be
/// prime (for composite `n` this is the Jacobi-type extension). A unit `n`
/// gives 1.
pub fn cubic_symbol(a: &Eisenstein, n: &Eisenstein) -> Result<CubicValue> {
    if n.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !n.is_coprime_to_three() {
        return Err(Error::NotCoprimeToThree(n.to_string()));
    }
    let mut n = n.primary_associate()?;
    let mut a = *a;
    let mut exp = 0i64;
    let lam = Eisenstein::one_minus_omega();
    loop {
        if n.is_unit() {
            return Ok(CubicValue::root(exp));
        }
        a = a.div_rem(&n)?.1;
        if a.is_zero() {
            return Ok(CubicValue::Zero);
        }
        let mut k = 0i64;
        while a.divisible_by_one_minus_omega() {
            a = a.exact_div(&lam)?.expect("divisibility checked");
            k += 1;
        }
        // a = u^{-1} a' with a' primary; (u^{-1}/n) = (w/n)^{-j} for u = ±w^j
        let u = a.primary_unit()?;
        let primary = u.checked_mul(&a)?;
        exp += -unit_exponent(&u) * omega_supplement(&n) + k * ramified_supplement(&n);
        // (a'/n) = (n/a') for primary a', n
        a = n;
        n = primary;
    }
}

/// `(a / pi)_3` for a prime `pi` prime to 3, by Euler's criterion
/// `a^{(N(pi) - 1)/3} mod pi` on canonical residues.
pub fn cubic_symbol_prime(a: &Eisenstein, pi: &Eisenstein) -> Result<CubicValue> {
    if pi.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !pi.is_coprime_to_three() {
        return Err(Error::NotCoprimeToThree(pi.to_string()));
    }
    if !is_prime_element(pi)? {
        return Err(Error::NotPrime(pi.to_string()));
    }
    let rs = ResidueSystem::new(*pi)?;
    let n = pi.norm()?;
    let mut base = rs.reduce(a)?;
    if base.is_zero() {
        return Ok(CubicValue::Zero);
    }
    let mut e = ((n - 1) / 3) as u128;
    let mut acc = Eisenstein::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = rs.reduce(&acc.checked_mul(&base)?)?;
        }
        base = rs.reduce(&base.checked_mul(&base)?)?;
        e >>= 1;
    }
    for k in 0..3 {
        if acc == rs.reduce(&CubicValue::Root(k).to_eisenstein())? {
            return Ok(CubicValue::Root(k));
        }
    }
    Err(Error::NumericGuard(format!("Euler criterion gave a non-root of unity modulo {pi}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primary_primes;

    #[test]
    fn displays() {
        let s: Vec<String> =
            [CubicValue::Zero, CubicValue::root(0), CubicValue::root(1), CubicValue::root(5)]
                .iter()
                .map(|v| v.to_string())
                .collect();
        assert_eq!(s, ["0", "1", "w", "w^2"]);
    }

    #[test]
    fn reciprocity_matches_euler_criterion_on_small_primes() {
        let primes = primary_primes(400).unwrap();
        for q in &primes {
            for a in -6..7 {
                for b in -6..7 {
                    let x = Eisenstein::new(a, b);
                    assert_eq!(
                        cubic_symbol(&x, &q.pi).unwrap(),
                        cubic_symbol_prime(&x, &q.pi).unwrap(),
                        "({x} / {})",
                        q.pi
                    );
                }
            }
        }
    }

    #[test]
    fn depends_only_on_the_ideal() {
        let pi = Eisenstein::new(-1, 3);
        let a = Eisenstein::new(5, 2);
        let v = cubic_symbol(&a, &pi).unwrap();
        for u in Eisenstein::units() {
            assert_eq!(cubic_symbol(&a, &(u * pi)).unwrap(), v);
        }
    }

    #[test]
    fn errors() {
        let three = Eisenstein::from_int(3);
        assert!(matches!(cubic_symbol(&Eisenstein::one(), &three), Err(Error::NotCoprimeToThree(_))));
        assert!(matches!(
            cubic_symbol_prime(&Eisenstein::one(), &Eisenstein::from_int(7)),
            Err(Error::NotPrime(_))
        ));
        assert_eq!(cubic_symbol(&Eisenstein::new(4, 0), &Eisenstein::one()).unwrap(), CubicValue::ONE);
    }
}
