use super::{EisensteinInt, Scalar};
use crate::error::{Error, Result};

/// Canonical residues modulo a nonzero `m`.
///
/// The ideal `(m)` is the lattice spanned by `m` and `m*w`. Its Hermite
/// normal form is `{(d1, 0), (c, g)}` with `g = gcd(a, b)` and
/// `d1 = N(m) / g`, so every class has a unique representative `x + y*w`
/// with `0 <= x < d1`, `0 <= y < g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueSystem<T: Scalar> {
    modulus: EisensteinInt<T>,
    d1: T,
    c: T,
    g: T,
}

impl<T: Scalar> ResidueSystem<T> {
    pub fn new(m: EisensteinInt<T>) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = m.norm()?;
        let (a, b) = (m.a, m.b);
        // y-components of the generators m = (a, b) and m*w = (-b, a - b).
        let amb = a.checked_sub(&b).ok_or_else(|| Error::InputTooLarge(m.to_string()))?;
        let eg = b.extended_gcd(&amb);
        let (g, s, t) = if eg.gcd < T::zero() { (-eg.gcd, -eg.x, -eg.y) } else { (eg.gcd, eg.x, eg.y) };
        let d1 = n / g;
        // s*m + t*(m w) has y-component g; its x-component is s*a - t*b.
        let cx = s
            .checked_mul(&a)
            .zip(t.checked_mul(&b))
            .and_then(|(x, y)| x.checked_sub(&y))
            .ok_or_else(|| Error::InputTooLarge(m.to_string()))?;
        Ok(Self { modulus: m, d1, c: cx.mod_floor(&d1), g })
    }

    pub fn modulus(&self) -> EisensteinInt<T> {
        self.modulus
    }

    /// Number of residue classes, `N(m)`.
    pub fn size(&self) -> T {
        self.d1 * self.g
    }

    /// `(d1, g)`: the ranges of the two canonical coordinates.
    pub fn shape(&self) -> (T, T) {
        (self.d1, self.g)
    }

    /// Canonical representative of `x` modulo `m`.
    pub fn reduce(&self, x: &EisensteinInt<T>) -> Result<EisensteinInt<T>> {
        let (k, y) = x.b.div_mod_floor(&self.g);
        let shifted = k
            .checked_mul(&self.c)
            .and_then(|kc| x.a.checked_sub(&kc))
            .ok_or_else(|| Error::InputTooLarge(x.to_string()))?;
        Ok(EisensteinInt::new(shifted.mod_floor(&self.d1), y))
    }

    /// Position of a canonical representative in [`Self::residues`].
    pub fn index_of(&self, canonical: &EisensteinInt<T>) -> T {
        canonical.a * self.g + canonical.b
    }

    /// All canonical representatives in lexicographic order of `(a, b)`.
    ///
    /// Fails with a resource error when `N(m)` exceeds `cap`.
    pub fn residues(&self, cap: u64) -> Result<Vec<EisensteinInt<T>>> {
        let size = self.size();
        if size.to_u64().is_none_or(|s| s > cap) {
            return Err(Error::ResourceLimit(format!(
                "residue enumeration of size {size} exceeds cap {cap}"
            )));
        }
        let mut out = Vec::with_capacity(size.to_usize().unwrap_or(0));
        let mut x = T::zero();
        while x < self.d1 {
            let mut y = T::zero();
            while y < self.g {
                out.push(EisensteinInt::new(x, y));
                y = y + T::one();
            }
            x = x + T::one();
        }
        Ok(out)
    }
}
