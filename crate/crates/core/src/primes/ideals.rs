use super::{rational, split_rational_prime, Splitting};
use crate::error::{Error, Result};
use crate::Eisenstein;

/// Largest norm bound accepted by [`IdealTable::new`].
pub const IDEAL_TABLE_CAP: u64 = 50_000_000;

/// A prime ideal with a fixed generator (primary, or `1 - w` above 3).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub generator: Eisenstein,
    pub norm: u64,
    pub splitting: Splitting,
}

/// Every nonzero ideal of `Z[w]` with norm `<= limit`, sorted by norm.
///
/// Each non-unit ideal is stored as `prime * cofactor`, where the cofactor
/// has strictly smaller norm and therefore an earlier index. Completely
/// multiplicative functions can thus be tabulated in one forward pass.
#[derive(Clone, Debug)]
pub struct IdealTable {
    limit: u64,
    primes: Vec<PrimeIdeal>,
    norms: Vec<u64>,
    generators: Vec<Eisenstein>,
    /// (index into `primes`, index of cofactor); unused for the unit ideal
    factor: Vec<(u32, u32)>,
}

impl IdealTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit > IDEAL_TABLE_CAP {
            return Err(Error::ResourceLimit(format!("ideal table bound {limit} exceeds {IDEAL_TABLE_CAP}")));
        }
        let limit = limit.max(1);
        let mut primes = Vec::new();
        for p in rational::sieve(limit)? {
            match Splitting::of_rational(p) {
                Splitting::Ramified => primes.push(PrimeIdeal {
                    generator: Eisenstein::one_minus_omega(),
                    norm: 3,
                    splitting: Splitting::Ramified,
                }),
                Splitting::Split => {
                    let pi = split_rational_prime(p)?;
                    for g in [pi, pi.conj()?] {
                        primes.push(PrimeIdeal { generator: g, norm: p, splitting: Splitting::Split });
                    }
                }
                Splitting::Inert => {
                    if p * p <= limit {
                        primes.push(PrimeIdeal {
                            generator: Eisenstein::from_int(-(p as i128)),
                            norm: p * p,
                            splitting: Splitting::Inert,
                        });
                    }
                }
            }
        }
        primes.sort_by_key(|q| (q.norm, q.generator.a, q.generator.b));

        let mut norms = vec![1u64];
        let mut generators = vec![Eisenstein::one()];
        let mut factor = vec![(u32::MAX, u32::MAX)];
        let mut stack = vec![(0usize, 0usize)];
        while let Some((idx, start)) = stack.pop() {
            let n = norms[idx];
            for (k, q) in primes.iter().enumerate().skip(start) {
                let Some(m) = n.checked_mul(q.norm).filter(|&m| m <= limit) else {
                    break;
                };
                let child = norms.len();
                norms.push(m);
                generators.push(generators[idx] * q.generator);
                factor.push((k as u32, idx as u32));
                stack.push((child, k));
            }
        }

        let mut order: Vec<usize> = (0..norms.len()).collect();
        order.sort_by_key(|&i| (norms[i], generators[i].a, generators[i].b));
        let mut rank = vec![0u32; order.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new as u32;
        }
        let norms_sorted = order.iter().map(|&i| norms[i]).collect();
        let gens_sorted = order.iter().map(|&i| generators[i]).collect();
        let factor_sorted = order
            .iter()
            .map(|&i| {
                let (p, c) = factor[i];
                if c == u32::MAX {
                    (p, c)
                } else {
                    (p, rank[c as usize])
                }
            })
            .collect();
        Ok(Self { limit, primes, norms: norms_sorted, generators: gens_sorted, factor: factor_sorted })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.primes
    }

    pub fn norms(&self) -> &[u64] {
        &self.norms
    }

    pub fn generators(&self) -> &[Eisenstein] {
        &self.generators
    }

    /// `(prime index, cofactor index)` of entry `i > 0`.
    pub fn factor(&self, i: usize) -> (usize, usize) {
        let (p, c) = self.factor[i];
        (p as usize, c as usize)
    }

    /// Number of leading entries with norm `<= n`.
    pub fn count_up_to(&self, n: u64) -> usize {
        self.norms.partition_point(|&m| m <= n)
    }

    /// Tabulates a completely multiplicative function given on prime ideals.
    ///
    /// Values live in a monoid described by `one` and `mul`.
    pub fn multiplicative<V: Copy>(
        &self,
        upto: usize,
        one: V,
        on_prime: &[V],
        mul: impl Fn(V, V) -> V,
    ) -> Vec<V> {
        let upto = upto.min(self.len());
        let mut out = Vec::with_capacity(upto);
        if upto == 0 {
            return out;
        }
        out.push(one);
        for i in 1..upto {
            let (p, c) = self.factor(i);
            out.push(mul(on_prime[p], out[c]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_brute_force() {
        // number of ideals of norm n is sum_{d | n} chi_{-3}(d)
        let t = IdealTable::new(500).unwrap();
        for n in 1..=500u64 {
            let expected: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| match d % 3 {
                    1 => 1,
                    2 => -1,
                    _ => 0,
                })
                .sum();
            let got = t.norms().iter().filter(|&&m| m == n).count() as i64;
            assert_eq!(got, expected, "n = {n}");
        }
    }

    #[test]
    fn generators_have_listed_norms_and_factor_structure() {
        let t = IdealTable::new(2000).unwrap();
        for i in 1..t.len() {
            let g = t.generators()[i];
            assert_eq!(g.norm().unwrap() as u64, t.norms()[i]);
            let (p, c) = t.factor(i);
            assert!(c < i);
            assert_eq!(t.norms()[c] * t.primes()[p].norm, t.norms()[i]);
        }
        let distinct: std::collections::HashSet<_> =
            t.generators().iter().map(|g| g.canonical_associate().unwrap()).collect();
        assert_eq!(distinct.len(), t.len());
    }
}
