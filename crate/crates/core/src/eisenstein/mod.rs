//! Exact arithmetic in the Eisenstein integers `Z[w]`, `w^2 + w + 1 = 0`.
//!
//! Elements are stored as `a + b*w` with coefficients of any signed primitive
//! integer type. Every operation that can overflow is checked; the plain
//! operator impls panic on overflow and are meant for code whose inputs are
//! already bounded.

mod residue;
mod text;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{PrimInt, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use residue::ResidueSystem;

/// Coefficient type usable for [`EisensteinInt`].
pub trait Scalar: PrimInt + Signed + Integer + Debug + Display + Hash + Send + Sync + 'static {}

impl<T> Scalar for T where T: PrimInt + Signed + Integer + Debug + Display + Hash + Send + Sync + 'static {}

#[inline]
pub(crate) fn lit<T: Scalar>(v: i64) -> T {
    T::from(v).expect("literal fits every supported scalar")
}

/// An Eisenstein integer `a + b*w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInt<T> {
    pub a: T,
    pub b: T,
}

fn overflow<T: Scalar>(what: &str, x: &EisensteinInt<T>) -> Error {
    Error::InputTooLarge(format!("{what} overflows for {x}"))
}

impl<T: Scalar> EisensteinInt<T> {
    pub const fn new(a: T, b: T) -> Self {
        Self { a, b }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero())
    }

    /// The primitive cube root of unity `w`.
    pub fn omega() -> Self {
        Self::new(T::zero(), T::one())
    }

    /// `w^2 = -1 - w`.
    pub fn omega_sq() -> Self {
        Self::new(-T::one(), -T::one())
    }

    /// The ramified prime `1 - w` above 3.
    pub fn one_minus_omega() -> Self {
        Self::new(T::one(), -T::one())
    }

    pub fn from_int(a: T) -> Self {
        Self::new(a, T::zero())
    }

    /// The six units `±1, ±w, ±w^2`, in the order `1, w, w^2, -1, -w, -w^2`.
    pub fn units() -> [Self; 6] {
        let u = [Self::one(), Self::omega(), Self::omega_sq()];
        [u[0], u[1], u[2], -u[0], -u[1], -u[2]]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `N(a + b*w) = a^2 - a*b + b^2`.
    pub fn norm(&self) -> Result<T> {
        let (a, b) = (self.a, self.b);
        let err = || overflow("norm", self);
        let aa = a.checked_mul(&a).ok_or_else(err)?;
        let bb = b.checked_mul(&b).ok_or_else(err)?;
        let ab = a.checked_mul(&b).ok_or_else(err)?;
        // a^2 + b^2 - ab never exceeds max(a^2, b^2) + |ab|; order the
        // operations so the intermediate stays in range whenever the result does.
        if ab >= T::zero() {
            aa.checked_sub(&ab).and_then(|t| t.checked_add(&bb)).ok_or_else(err)
        } else {
            aa.checked_add(&bb).and_then(|t| t.checked_sub(&ab)).ok_or_else(err)
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.norm(), Ok(n) if n.is_one())
    }

    /// Complex conjugate `(a - b) - b*w`.
    pub fn conj(&self) -> Result<Self> {
        let a = self.a.checked_sub(&self.b).ok_or_else(|| overflow("conj", self))?;
        let b = T::zero().checked_sub(&self.b).ok_or_else(|| overflow("conj", self))?;
        Ok(Self::new(a, b))
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        match (self.a.checked_add(&o.a), self.b.checked_add(&o.b)) {
            (Some(a), Some(b)) => Ok(Self::new(a, b)),
            _ => Err(overflow("addition", self)),
        }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        match (self.a.checked_sub(&o.a), self.b.checked_sub(&o.b)) {
            (Some(a), Some(b)) => Ok(Self::new(a, b)),
            _ => Err(overflow("subtraction", self)),
        }
    }

    /// `(a + b w)(c + d w) = (ac - bd) + (ad + bc - bd) w`.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        let f = || -> Option<Self> {
            let ac = self.a.checked_mul(&o.a)?;
            let bd = self.b.checked_mul(&o.b)?;
            let ad = self.a.checked_mul(&o.b)?;
            let bc = self.b.checked_mul(&o.a)?;
            Some(Self::new(ac.checked_sub(&bd)?, ad.checked_add(&bc)?.checked_sub(&bd)?))
        };
        f().ok_or_else(|| overflow("multiplication", self))
    }

    pub fn checked_scale(&self, k: T) -> Result<Self> {
        match (self.a.checked_mul(&k), self.b.checked_mul(&k)) {
            (Some(a), Some(b)) => Ok(Self::new(a, b)),
            _ => Err(overflow("scaling", self)),
        }
    }

    pub fn checked_pow(&self, mut e: u64) -> Result<Self> {
        let mut base = *self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplication by `w`: `w (a + b w) = -b + (a - b) w`.
    pub fn mul_omega(&self) -> Self {
        Self::new(-self.b, self.a - self.b)
    }

    /// Divisibility by the ramified prime `1 - w`, i.e. `a + b ≡ 0 (mod 3)`.
    pub fn divisible_by_one_minus_omega(&self) -> bool {
        let three = lit::<T>(3);
        (self.a.mod_floor(&three) + self.b.mod_floor(&three)).mod_floor(&three).is_zero()
    }

    pub fn is_coprime_to_three(&self) -> bool {
        !self.divisible_by_one_minus_omega()
    }

    /// Primary means `a ≡ 1 (mod 3)` and `b ≡ 0 (mod 3)`.
    pub fn is_primary(&self) -> bool {
        let three = lit::<T>(3);
        self.a.mod_floor(&three).is_one() && self.b.mod_floor(&three).is_zero()
    }

    /// The unique associate `u * self` that is primary.
    pub fn primary_associate(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInput("zero has no primary associate".into()));
        }
        if !self.is_coprime_to_three() {
            return Err(Error::NotCoprimeToThree(self.to_string()));
        }
        Self::units()
            .iter()
            .map(|u| u.checked_mul(self))
            .find(|z| matches!(z, Ok(z) if z.is_primary()))
            .expect("exactly one associate of an element prime to 3 is primary")
    }

    /// Unit `u` with `u * self` primary.
    pub fn primary_unit(&self) -> Result<Self> {
        let p = self.primary_associate()?;
        for u in Self::units() {
            if u.checked_mul(self)? == p {
                return Ok(u);
            }
        }
        unreachable!("primary associate is u * self for some unit")
    }

    /// Canonical associate: primary when prime to 3, otherwise the associate
    /// with `a > 0`, `b >= 0` and the smallest `b`.
    pub fn canonical_associate(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(*self);
        }
        if self.is_coprime_to_three() {
            return self.primary_associate();
        }
        let mut best: Option<Self> = None;
        for u in Self::units() {
            let z = u.checked_mul(self)?;
            if z.a > T::zero() && z.b >= T::zero() && best.is_none_or(|bz| z.b < bz.b) {
                best = Some(z);
            }
        }
        Ok(best.expect("the sector a > 0, b >= 0 contains an associate"))
    }

    /// Euclidean division `self = q*y + r` with `N(r) < N(y)`.
    ///
    /// `q` is the lattice point nearest to `self / y` among the four
    /// floor/ceil corners; ties go to the remainder with smaller `a`, then
    /// smaller `b`.
    pub fn div_rem(&self, y: &Self) -> Result<(Self, Self)> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = y.norm()?;
        let num = self.checked_mul(&y.conj()?)?;
        let (ua, ub) = (num.a.div_floor(&n), num.b.div_floor(&n));
        let mut best: Option<(T, Self, Self)> = None;
        for da in [T::zero(), T::one()] {
            for db in [T::zero(), T::one()] {
                let q = Self::new(ua + da, ub + db);
                let r = self.checked_sub(&q.checked_mul(y)?)?;
                let nr = r.norm()?;
                let better = match &best {
                    None => true,
                    Some((bn, _, br)) => nr < *bn || (nr == *bn && (r.a, r.b) < (br.a, br.b)),
                };
                if better {
                    best = Some((nr, q, r));
                }
            }
        }
        let (_, q, r) = best.expect("four candidates were examined");
        Ok((q, r))
    }

    /// Exact quotient `self / y`, or `None` if `y` does not divide `self`.
    pub fn exact_div(&self, y: &Self) -> Result<Option<Self>> {
        if y.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = y.norm()?;
        let num = self.checked_mul(&y.conj()?)?;
        if num.a.mod_floor(&n).is_zero() && num.b.mod_floor(&n).is_zero() {
            Ok(Some(Self::new(num.a / n, num.b / n)))
        } else {
            Ok(None)
        }
    }

    pub fn is_divisible_by(&self, y: &Self) -> Result<bool> {
        Ok(self.exact_div(y)?.is_some())
    }

    /// `x ≡ y (mod m)`.
    pub fn congruent_mod(x: &Self, y: &Self, m: &Self) -> Result<bool> {
        x.checked_sub(y)?.is_divisible_by(m)
    }

    /// Greatest common divisor, normalized with [`Self::canonical_associate`].
    pub fn gcd(x: &Self, y: &Self) -> Result<Self> {
        let (mut u, mut v) = (*x, *y);
        while !v.is_zero() {
            let (_, r) = u.div_rem(&v)?;
            u = v;
            v = r;
        }
        u.canonical_associate()
    }

    /// Whether `x` and `y` generate the same ideal.
    pub fn is_associate(x: &Self, y: &Self) -> Result<bool> {
        for u in Self::units() {
            if u.checked_mul(x)? == *y {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Converts the coefficients to another scalar type.
    pub fn cast<U: Scalar>(&self) -> Option<EisensteinInt<U>> {
        Some(EisensteinInt::new(U::from(self.a)?, U::from(self.b)?))
    }
}

impl<T: Scalar> Add for EisensteinInt<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.checked_add(&o).expect("Eisenstein addition overflow")
    }
}

impl<T: Scalar> Sub for EisensteinInt<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.checked_sub(&o).expect("Eisenstein subtraction overflow")
    }
}

impl<T: Scalar> Mul for EisensteinInt<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(&o).expect("Eisenstein multiplication overflow")
    }
}

impl<T: Scalar> Neg for EisensteinInt<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<T: Scalar> Debug for EisensteinInt<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Eisenstein;

    fn e(a: i128, b: i128) -> Eisenstein {
        Eisenstein::new(a, b)
    }

    #[test]
    fn omega_is_cube_root_of_unity() {
        let w = Eisenstein::omega();
        assert_eq!(w * w, Eisenstein::omega_sq());
        assert_eq!(w * w * w, Eisenstein::one());
        assert_eq!(w * w + w + Eisenstein::one(), Eisenstein::zero());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(e(2, 3).norm().unwrap(), 7);
        assert_eq!(e(3, 3).norm().unwrap(), 9);
        assert_eq!(e(1, -1).norm().unwrap(), 3);
        assert_eq!(e(-2, -3).norm().unwrap(), 7);
    }

    #[test]
    fn norm_overflow_is_reported() {
        let big = e(i128::MAX / 2, -(i128::MAX / 2));
        assert!(matches!(big.norm(), Err(Error::InputTooLarge(_))));
    }

    #[test]
    fn div_rem_small_remainder() {
        let (q, r) = e(17, 5).div_rem(&e(2, 3)).unwrap();
        assert_eq!(q * e(2, 3) + r, e(17, 5));
        assert!(r.norm().unwrap() < 7);
        assert_eq!(e(1, 1).div_rem(&Eisenstein::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn primary_associates() {
        let p = e(2, 3).primary_associate().unwrap();
        assert!(p.is_primary());
        assert!(Eisenstein::is_associate(&p, &e(2, 3)).unwrap());
        assert!(matches!(e(3, 3).primary_associate(), Err(Error::NotCoprimeToThree(_))));
    }

    #[test]
    fn gcd_is_canonical() {
        let g = Eisenstein::gcd(&(e(2, 3) * e(4, 3)), &(e(2, 3) * e(5, 1))).unwrap();
        assert_eq!(g, e(2, 3).primary_associate().unwrap());
        let g3 = Eisenstein::gcd(&e(6, 0), &e(9, 0)).unwrap();
        assert_eq!(g3, e(3, 0));
        assert_eq!(e(1, -1).canonical_associate().unwrap(), e(2, 1));
    }

    #[test]
    fn generic_over_scalar_width() {
        let x = EisensteinInt::<i32>::new(2, 3);
        assert_eq!(x.norm().unwrap(), 7);
        assert_eq!(x.cast::<i128>().unwrap(), e(2, 3));
    }
}
