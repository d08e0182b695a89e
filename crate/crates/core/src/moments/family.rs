//! Weighted family members and parallel per-member evaluation.

use rayon::prelude::*;

use crate::analytic::WeightFunction;
use crate::error::Result;
use crate::lfunctions::{cutoff_for, LSeriesHandle, Side, ThetaEngine};
use crate::primes::{sieve_family, IdealTable, PrimaryPrime};
use crate::C64;

/// A family prime inside the weight's support.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Member {
    pub prime: PrimaryPrime,
    /// `Lambda_K(pi) = log N(pi)`, which is also `Lambda(p)` for split `pi`
    pub lambda: f64,
    pub weight: f64,
}

/// Family primes `pi` with `w(N(pi) / x) > 0`, in norm order.
///
/// The Dirichlet side only has split members. On the Hecke side inert
/// members `-q` are kept unless `split_only` is set.
pub(crate) fn members(side: Side, x: f64, w: &dyn WeightFunction, split_only: bool) -> Result<Vec<Member>> {
    let split_only = split_only || side == Side::Dirichlet;
    let limit = (2.0 * x).floor() as u64;
    Ok(sieve_family(limit, split_only)?
        .into_iter()
        .map(|prime| Member {
            prime,
            lambda: (prime.norm as f64).ln(),
            weight: w.evaluate(prime.norm as f64 / x),
        })
        .filter(|m| m.weight > 0.0)
        .collect())
}

/// Runs `f` on every member with an engine able to evaluate at `points`,
/// in parallel, keeping member order.
pub(crate) fn map_members<T, F>(side: Side, members: &[Member], points: &[C64], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Member, &ThetaEngine<'_>) -> Result<T> + Sync,
{
    let cutoff = |n: u64| points.iter().map(|&s| cutoff_for(side, n, s)).max().unwrap_or(0).max(64);
    let table = match side {
        Side::Hecke => {
            let top = members.iter().map(|m| cutoff(m.prime.norm)).max().unwrap_or(64);
            Some(IdealTable::new(top)?)
        }
        Side::Dirichlet => None,
    };
    members
        .par_iter()
        .map(|m| {
            let cut = cutoff(m.prime.norm);
            let h = match &table {
                Some(t) => LSeriesHandle::hecke_with_table(&m.prime.pi, t, cut)?,
                None => LSeriesHandle::dirichlet(&m.prime.pi, cut)?,
            };
            f(m, &ThetaEngine::new(&h))
        })
        .collect()
}
