//! Rational-integer helpers: sieving, primality, modular arithmetic.

use crate::error::{Error, Result};

/// Largest limit accepted by [`sieve`].
pub const SIEVE_CAP: u64 = 1 << 34;

/// All primes `<= limit`, ascending (odd-only Eratosthenes).
pub fn sieve(limit: u64) -> Result<Vec<u64>> {
    if limit > SIEVE_CAP {
        return Err(Error::ResourceLimit(format!("sieve limit {limit} exceeds {SIEVE_CAP}")));
    }
    if limit < 2 {
        return Ok(Vec::new());
    }
    // index i represents 2i + 1
    let n = (limit as usize - 1) / 2 + 1;
    let mut composite = vec![false; n];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < n {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend((1..n).filter(|&i| !composite[i]).map(|i| 2 * i as u64 + 1));
    Ok(out)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Modular inverse via the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, q.div_ceil(2), p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Floor of the k-th root of `n`.
pub fn iroot(n: u128, k: u32) -> u128 {
    if k == 1 || n < 2 {
        return n;
    }
    let mut x = (n as f64).powf(1.0 / k as f64).round() as u128;
    let pow_le = |x: u128| -> bool {
        let mut acc: u128 = 1;
        for _ in 0..k {
            match acc.checked_mul(x) {
                Some(v) if v <= n => acc = v,
                _ => return false,
            }
        }
        true
    };
    while x > 0 && !pow_le(x) {
        x -= 1;
    }
    while pow_le(x + 1) {
        x += 1;
    }
    x
}

/// `(p, k)` with `n = p^k` and `p` prime, if `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    for k in (1..=63).rev() {
        let r = iroot(n as u128, k) as u64;
        if r >= 2 && (r as u128).pow(k) == n as u128 && is_prime(r) {
            return Some((r, k));
        }
    }
    None
}
