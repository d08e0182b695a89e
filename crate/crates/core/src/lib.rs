//! Cubic Hecke characters over `Q(w)` and their L-functions.
//!
//! The crate is layered bottom-up: exact Eisenstein arithmetic, primes and
//! the family `pi ≡ 1 (mod 9)`, cubic residue symbols, Gauss sums, special
//! functions, L-function evaluation, and family averages compared with
//! their predicted main terms.

pub mod analytic;
pub mod eisenstein;
pub mod error;
pub mod gauss;
pub mod lfunctions;
pub mod moments;
pub mod primes;
pub mod symbols;
pub mod util;
pub mod verify;

pub use error::{Error, ErrorKind, Result};

/// Eisenstein integers with `i128` coefficients.
pub type Eisenstein = eisenstein::EisensteinInt<i128>;

/// Double-precision complex numbers.
pub type C64 = num_complex::Complex64;
