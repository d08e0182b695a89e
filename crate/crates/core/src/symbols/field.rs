use super::CubicValue;
use crate::error::{Error, Result};
use crate::primes::is_prime_element;
use crate::primes::rational::{inv_mod, is_prime, mul_mod, pow_mod};
use crate::Eisenstein;

/// The residue field `Z[w] / (pi)` of a prime `pi` prime to 3, used to
/// evaluate `(x / pi)_3` by a single modular exponentiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueField {
    /// `F_p`, with `w ≡ omega_p (mod pi)`.
    Split { p: u64, omega_p: u64 },
    /// `F_{q^2} = F_q[w]`.
    Inert { q: u64 },
}

impl ResidueField {
    pub fn new(pi: &Eisenstein) -> Result<Self> {
        if !pi.is_coprime_to_three() {
            return Err(Error::NotCoprimeToThree(pi.to_string()));
        }
        if !is_prime_element(pi)? {
            return Err(Error::NotPrime(pi.to_string()));
        }
        let n = pi.norm()? as u64;
        if is_prime(n) {
            let p = n;
            let a = pi.a.rem_euclid(p as i128) as u64;
            let b = pi.b.rem_euclid(p as i128) as u64;
            let binv = inv_mod(b, p).expect("b is a unit modulo p");
            let omega_p = (p - mul_mod(a, binv, p)) % p;
            Ok(ResidueField::Split { p, omega_p })
        } else {
            let q = pi.a.unsigned_abs().max(pi.b.unsigned_abs()) as u64;
            Ok(ResidueField::Inert { q })
        }
    }

    /// Size of the field.
    pub fn order(&self) -> u64 {
        match *self {
            ResidueField::Split { p, .. } => p,
            ResidueField::Inert { q } => q * q,
        }
    }

    /// `(x / pi)_3`.
    pub fn symbol(&self, x: &Eisenstein) -> CubicValue {
        match *self {
            ResidueField::Split { p, omega_p } => {
                let v = self.reduce_split(x);
                if v == 0 {
                    return CubicValue::Zero;
                }
                let r = pow_mod(v, (p - 1) / 3, p);
                if r == 1 {
                    CubicValue::Root(0)
                } else if r == omega_p {
                    CubicValue::Root(1)
                } else {
                    debug_assert_eq!(r, mul_mod(omega_p, omega_p, p));
                    CubicValue::Root(2)
                }
            }
            ResidueField::Inert { q } => {
                let x0 = x.a.rem_euclid(q as i128) as u64;
                let y0 = x.b.rem_euclid(q as i128) as u64;
                if x0 == 0 && y0 == 0 {
                    return CubicValue::Zero;
                }
                match inert_pow(x0, y0, (q * q - 1) / 3, q) {
                    (1, 0) => CubicValue::Root(0),
                    (0, 1) => CubicValue::Root(1),
                    r => {
                        debug_assert_eq!(r, (q - 1, q - 1));
                        CubicValue::Root(2)
                    }
                }
            }
        }
    }

    /// `(n / pi)_3` for a rational integer `n`.
    pub fn symbol_int(&self, n: i64) -> CubicValue {
        self.symbol(&Eisenstein::from_int(n as i128))
    }

    /// Image of `x` in `F_p` for a split prime.
    pub fn reduce_split(&self, x: &Eisenstein) -> u64 {
        match *self {
            ResidueField::Split { p, omega_p } => {
                let a = x.a.rem_euclid(p as i128) as u64;
                let b = x.b.rem_euclid(p as i128) as u64;
                (a + mul_mod(b, omega_p, p)) % p
            }
            ResidueField::Inert { .. } => panic!("reduce_split on an inert residue field"),
        }
    }
}

/// `(x + y w)^e` in `F_q[w]`.
fn inert_pow(x: u64, y: u64, mut e: u64, q: u64) -> (u64, u64) {
    let mul = |(a, b): (u64, u64), (c, d): (u64, u64)| -> (u64, u64) {
        let ac = mul_mod(a, c, q);
        let bd = mul_mod(b, d, q);
        let ad = mul_mod(a, d, q);
        let bc = mul_mod(b, c, q);
        ((ac + q - bd) % q, (ad + bc + q - bd) % q)
    };
    let mut base = (x, y);
    let mut acc = (1 % q, 0);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::primary_primes;
    use crate::symbols::cubic_symbol_prime;

    #[test]
    fn agrees_with_euler_criterion() {
        for q in primary_primes(700).unwrap() {
            let f = ResidueField::new(&q.pi).unwrap();
            assert_eq!(f.order(), q.norm);
            for a in -5..6 {
                for b in -5..6 {
                    let x = Eisenstein::new(a, b);
                    assert_eq!(f.symbol(&x), cubic_symbol_prime(&x, &q.pi).unwrap());
                }
            }
        }
    }
}
