use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{gauss_sum_prime, tau_fast};
use crate::primes::rational::sieve;
use crate::primes::IdealTable;
use crate::symbols::{CubicValue, ResidueField};
use crate::Eisenstein;

/// Which L-function a handle describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `L(s, chi)` over `K`, `chi(a) = (a / pi)_3` on ideals.
    Hecke,
    /// `L(s, chi)` over `Q`, `chi(n) = (n / pi)_3` on rational `n`.
    Dirichlet,
}

/// Coefficients and functional-equation data of one cubic L-function.
///
/// The completed function is `Lambda(s) = Q^s Gamma(kappa s) L(s)` with
/// `Lambda(s) = W Lambda(1 - s, conj chi)`.
#[derive(Clone, Debug)]
pub struct LSeriesHandle {
    pub side: Side,
    pub pi: Eisenstein,
    pub conductor_norm: u64,
    pub root_number: Complex64,
    /// `Q` in `Q^s Gamma(kappa s)`.
    pub q: f64,
    pub kappa: f64,
    /// nonzero Dirichlet coefficients `(n, c_n)`, `n` ascending
    coeffs: Vec<(u64, Complex64)>,
    cutoff: u64,
}

fn field_for(pi: &Eisenstein) -> Result<ResidueField> {
    if !pi.is_primary() {
        return Err(Error::Precondition(format!("{pi} is not primary")));
    }
    let field = ResidueField::new(pi)?;
    if field.symbol(&Eisenstein::omega()) != CubicValue::ONE {
        return Err(Error::Precondition(format!(
            "(w / {pi})_3 is not 1, so the symbol is not a character on ideals"
        )));
    }
    Ok(field)
}

fn accumulate(counts: &[u32; 3]) -> Complex64 {
    let w = crate::symbols::omega_power(1);
    Complex64::new(counts[0] as f64, 0.0) + w * counts[1] as f64 + w.conj() * counts[2] as f64
}

impl LSeriesHandle {
    /// Hecke L-function of `(. / pi)_3` with coefficients up to `cutoff`.
    pub fn hecke(pi: &Eisenstein, cutoff: u64) -> Result<Self> {
        let table = IdealTable::new(cutoff)?;
        Self::hecke_with_table(pi, &table, cutoff)
    }

    /// As [`Self::hecke`], reusing a shared ideal table of sufficient size.
    pub fn hecke_with_table(pi: &Eisenstein, table: &IdealTable, cutoff: u64) -> Result<Self> {
        if cutoff > table.limit() {
            return Err(Error::Precondition(format!(
                "cutoff {cutoff} exceeds the ideal table bound {}",
                table.limit()
            )));
        }
        let field = field_for(pi)?;
        let n = pi.norm()? as u64;
        let upto = table.count_up_to(cutoff);
        let nprimes = table.primes().partition_point(|p| p.norm <= cutoff);
        // exponents 0..3 of w, with 3 meaning zero
        let on_prime: Vec<u8> = table.primes()[..nprimes]
            .iter()
            .map(|p| field.symbol(&p.generator).exponent().unwrap_or(3))
            .collect();
        let mut on_prime_full = on_prime;
        on_prime_full.resize(table.primes().len(), 3);
        let values =
            table.multiplicative(
                upto,
                0u8,
                &on_prime_full,
                |a, b| {
                    if a == 3 || b == 3 {
                        3
                    } else {
                        (a + b) % 3
                    }
                },
            );
        let norms = table.norms();
        let mut coeffs = Vec::new();
        let mut i = 0;
        while i < upto {
            let m = norms[i];
            let mut counts = [0u32; 3];
            while i < upto && norms[i] == m {
                if values[i] < 3 {
                    counts[values[i] as usize] += 1;
                }
                i += 1;
            }
            if counts != [0, 0, 0] {
                coeffs.push((m, accumulate(&counts)));
            }
        }
        let root_number = gauss_sum_prime(&Eisenstein::one(), pi)? / (n as f64).sqrt();
        Ok(Self {
            side: Side::Hecke,
            pi: *pi,
            conductor_norm: n,
            root_number,
            q: (3.0 * n as f64).sqrt() / (2.0 * PI),
            kappa: 1.0,
            coeffs,
            cutoff,
        })
    }

    /// Dirichlet L-function of `n -> (n / pi)_3` for a split `pi`.
    pub fn dirichlet(pi: &Eisenstein, cutoff: u64) -> Result<Self> {
        let field = field_for(pi)?;
        let ResidueField::Split { p, .. } = field else {
            return Err(Error::Precondition(format!("{pi} does not lie over a split prime")));
        };
        let cutoff = cutoff.max(1);
        let vals = dirichlet_values(&field, cutoff)?;
        let coeffs = vals
            .iter()
            .enumerate()
            .skip(1)
            .filter_map(|(n, v)| v.exponent().map(|k| (n as u64, crate::symbols::omega_power(k as i64))))
            .collect();
        let root_number = tau_fast(pi)? / (p as f64).sqrt();
        Ok(Self {
            side: Side::Dirichlet,
            pi: *pi,
            conductor_norm: p,
            root_number,
            q: (p as f64 / PI).sqrt(),
            kappa: 0.5,
            coeffs,
            cutoff,
        })
    }

    /// The handle of the conjugate character.
    pub fn conj(&self) -> Self {
        Self {
            pi: self.pi.conj().expect("conjugate of a handle generator fits"),
            root_number: self.root_number.conj(),
            coeffs: self.coeffs.iter().map(|&(n, c)| (n, c.conj())).collect(),
            ..self.clone()
        }
    }

    pub fn coefficients(&self) -> &[(u64, Complex64)] {
        &self.coeffs
    }

    /// Largest `n` with a tabulated coefficient.
    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// `log(Q^s Gamma(kappa s))`.
    pub fn log_gamma_factor(&self, s: Complex64) -> Result<Complex64> {
        Ok(s * self.q.ln() + crate::analytic::ln_gamma(s * self.kappa)?)
    }

    /// Coefficient bound that covers evaluation up to height `t_max`.
    pub fn required_cutoff(side: Side, conductor_norm: u64, t_max: f64) -> u64 {
        let (q, kappa) = match side {
            Side::Hecke => ((3.0 * conductor_norm as f64).sqrt() / (2.0 * PI), 1.0),
            Side::Dirichlet => ((conductor_norm as f64 / PI).sqrt(), 0.5),
        };
        let cos = super::theta::worst_cos(kappa, t_max);
        (q * (super::theta::EXP_CUT / cos).powf(kappa)).ceil() as u64 + 2
    }

    /// `sum_{n <= m} c_n n^{-s}` and its derivative.
    pub fn partial_sum(&self, s: Complex64, m: u64) -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &(n, c) in self.coeffs.iter().take_while(|(n, _)| *n <= m) {
            let ln = (n as f64).ln();
            let t = c * (-s * ln).exp();
            v += t;
            d -= t * ln;
        }
        (v, d)
    }
}

/// `chi(n)` for `0 <= n <= m`, completely multiplicative from the primes.
fn dirichlet_values(field: &ResidueField, m: u64) -> Result<Vec<CubicValue>> {
    let mut vals = vec![CubicValue::ONE; m as usize + 1];
    vals[0] = CubicValue::Zero;
    let mut spf = vec![0u32; m as usize + 1];
    for p in sieve(m)? {
        let mut k = p;
        while k <= m {
            if spf[k as usize] == 0 {
                spf[k as usize] = p as u32;
            }
            k += p;
        }
    }
    for n in 2..=m as usize {
        let p = spf[n] as usize;
        let chi_p = if p == n { field.symbol_int(n as i64) } else { vals[p] };
        vals[n] = if p == n { chi_p } else { chi_p.mul(&vals[n / p]) };
    }
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve_family;
    use crate::symbols::cubic_symbol;

    #[test]
    fn hecke_coefficients_match_symbols() {
        let pi = sieve_family(200, true).unwrap()[0].pi;
        let h = LSeriesHandle::hecke(&pi, 300).unwrap();
        let table = IdealTable::new(300).unwrap();
        let mut by_norm = std::collections::BTreeMap::<u64, Complex64>::new();
        for (i, g) in table.generators().iter().enumerate() {
            let v = cubic_symbol(g, &pi).unwrap().to_complex();
            *by_norm.entry(table.norms()[i]).or_default() += v;
        }
        for (n, c) in h.coefficients() {
            assert!((by_norm[n] - c).norm() < 1e-12, "n = {n}");
        }
        // the ramified prime has chi((1 - w)) = 1 for this family
        assert!((h.coefficients().iter().find(|(n, _)| *n == 3).unwrap().1 - 1.0).norm() < 1e-12);
        assert!((h.root_number.norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn dirichlet_values_are_cubic_and_multiplicative() {
        let pi = sieve_family(200, true).unwrap()[0].pi;
        let h = LSeriesHandle::dirichlet(&pi, 500).unwrap();
        let field = ResidueField::new(&pi).unwrap();
        for &(n, c) in h.coefficients() {
            let direct = field.symbol_int(n as i64).to_complex();
            assert!((c - direct).norm() < 1e-12);
            assert!((c.powi(3) - 1.0).norm() < 1e-12);
        }
        assert!((h.root_number.norm() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_non_family_modulus() {
        // primary of norm 7 with (w / pi)_3 = w^2
        let pi = Eisenstein::new(-2, -3);
        assert!(matches!(LSeriesHandle::hecke(&pi, 100), Err(Error::Precondition(_))));
    }
}
