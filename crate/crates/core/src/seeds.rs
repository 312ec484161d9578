//! Golden seeds: `±1` strings `s_1..s_k` with `s_ij = s_i s_j` whenever
//! `ij <= k` and `sum s_i` in `{-1, 0, 1}`.
//!
//! Extending a golden seed multiplicatively balances every cascade
//! `{d, 2d, ..., kd}`, since that cascade sums to `f(d) * sum s_i`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiplicative::{build_coloring_with, ternary_ones, MultiplicativeColoring, SignRule};
use crate::sieve::SpfTable;

pub const DEFAULT_PRIME_BUDGET: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    signs: Vec<i8>,
}

impl Seed {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::InvalidArgument("seed must be non-empty".into()));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidArgument("seed entries must be ±1".into()));
        }
        Ok(Seed { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// `s_i` for `1 <= i <= k`.
    pub fn get(&self, i: usize) -> i8 {
        self.signs[i - 1]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sum(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// `s_1 = +1` and `s_ij = s_i s_j` for every `ij <= k`, checked pair by pair.
    pub fn is_range_multiplicative(&self) -> bool {
        let k = self.len();
        if self.get(1) != 1 {
            return false;
        }
        (2..=k).all(|i| (i..=k / i).all(|j| self.get(i * j) == self.get(i) * self.get(j)))
    }

    pub fn is_golden(&self) -> bool {
        self.sum().abs() <= 1 && self.is_range_multiplicative()
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for Seed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                other => Err(Error::InvalidArgument(format!(
                    "bad sign character {other:?}"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Seed::new(signs)
    }
}

impl Serialize for Seed {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedRow {
    pub seed: Seed,
    pub golden: bool,
}

/// The string determined by prime signs on `1..=k`.
fn seed_from_prime_signs(spf: &SpfTable, k: usize, sign_of: impl Fn(u32) -> i8) -> Seed {
    let mut signs = vec![0i8; k + 1];
    signs[1] = 1;
    for n in 2..=k {
        let p = spf.spf(n as u32);
        signs[n] = sign_of(p) * signs[n / p as usize];
    }
    signs.remove(0);
    Seed { signs }
}

/// All `2^pi(k)` range-multiplicative strings of length `k`, in lexicographic
/// order with `-` before `+`, each flagged golden or not.
pub fn enumerate_seeds(k: usize, prime_budget: u32) -> Result<Vec<SeedRow>> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "seed length must be at least 1".into(),
        ));
    }
    let spf = SpfTable::new(k as u32);
    let primes = spf.primes().to_vec();
    if primes.len() as u32 > prime_budget {
        return Err(Error::BudgetExceeded {
            required: 1u128 << primes.len(),
            budget: 1u128 << prime_budget,
        });
    }
    let count = primes.len();
    let mut index = vec![0usize; k + 1];
    for (i, &p) in primes.iter().enumerate() {
        index[p as usize] = i;
    }
    // bit (count - 1 - i) of the mask is the sign of the i-th prime, 0 = '-'
    let rows = (0..1u64 << count)
        .into_par_iter()
        .map(|mask| {
            let seed = seed_from_prime_signs(&spf, k, |p| {
                let bit = count - 1 - index[p as usize];
                if mask >> bit & 1 == 1 {
                    1
                } else {
                    -1
                }
            });
            let golden = seed.sum().abs() <= 1;
            SeedRow { seed, golden }
        })
        .collect();
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// Mod-3 character with `⌊t/2⌋` primes `p ≡ 1 (mod 3)` in `(k/2, k]` flipped.
    Flip,
    /// Not enough such primes; first golden string of the full enumeration.
    Fallback,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructedSeed {
    pub seed: Seed,
    pub construction: Construction,
    /// Primes switched from `+1` to `-1` (largest first); empty for fallback.
    pub flipped: Vec<u64>,
    /// Sum of the mod-3 character over `1..=k` before flipping.
    pub character_sum: u32,
}

/// A golden seed of length `k >= 2`.
///
/// Starts from the mod-3 character, whose sum over `1..=k` equals the number
/// of ternary digits 1 of `k`, and flips `⌊t/2⌋` primes `p ≡ 1 (mod 3)` with
/// `k/2 < p <= k` (each has no other multiple in range, so each flip lowers
/// the sum by exactly 2).
pub fn construct_seed(k: usize, prime_budget: u32) -> Result<ConstructedSeed> {
    if k < 2 {
        return Err(Error::InvalidArgument("construct_seed needs k >= 2".into()));
    }
    let spf = SpfTable::new(k as u32);
    let character = seed_from_prime_signs(&spf, k, |p| {
        SignRule::Mod3Character
            .sign_of(p as u64)
            .expect("total rule")
    });
    let t = ternary_ones(k as u64);
    if character.sum() != t as i64 {
        return Err(Error::Inconsistent(format!(
            "character sum {} differs from ternary digit count {t} at k = {k}",
            character.sum()
        )));
    }
    let q = (t / 2) as usize;
    let candidates: Vec<u64> = spf
        .primes()
        .iter()
        .rev()
        .map(|&p| p as u64)
        .filter(|&p| p % 3 == 1 && 2 * p > k as u64)
        .take(q)
        .collect();

    if candidates.len() == q {
        let bound = (k as f64).ln() / 3f64.ln() + 1.0;
        debug_assert!(q as f64 <= bound, "flip count {q} above log3(k) + 1");
        let mut signs = character.signs.clone();
        for &p in &candidates {
            signs[p as usize - 1] = -1;
        }
        let seed = Seed { signs };
        if !seed.is_golden() {
            return Err(Error::Inconsistent(format!(
                "flip construction failed at k = {k}"
            )));
        }
        return Ok(ConstructedSeed {
            seed,
            construction: Construction::Flip,
            flipped: candidates,
            character_sum: t,
        });
    }

    let row = enumerate_seeds(k, prime_budget)?
        .into_iter()
        .find(|r| r.golden)
        .ok_or_else(|| Error::Inconsistent(format!("no golden seed of length {k}")))?;
    Ok(ConstructedSeed {
        seed: row.seed,
        construction: Construction::Fallback,
        flipped: Vec::new(),
        character_sum: t,
    })
}

/// Extends a range-multiplicative seed to `1..=horizon`: primes `p <= k` keep
/// `s_p`, larger primes take `tail(p)`.
pub fn extend_seed(
    seed: &Seed,
    horizon: u32,
    tail: impl Fn(u64) -> i8,
) -> Result<MultiplicativeColoring> {
    if !seed.is_range_multiplicative() {
        return Err(Error::InvalidArgument(format!(
            "{seed} is not range-multiplicative"
        )));
    }
    let k = seed.len() as u64;
    let f = build_coloring_with(horizon, |p| {
        if p <= k {
            seed.get(p as usize)
        } else {
            tail(p)
        }
    })?;
    for i in 1..=k.min(horizon as u64) {
        if f.eval(i)? != seed.get(i as usize) {
            return Err(Error::Inconsistent(format!(
                "extension disagrees with the seed at {i}"
            )));
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CascadeScan {
    pub length: u64,
    pub cascades: u64,
    pub max_balance: u64,
    /// Root of the first cascade reaching `max_balance`.
    pub worst_root: Option<u64>,
}

/// Balance of every cascade `{d, ..., kd}` with `kd <= horizon`, summed
/// term by term.
pub fn scan_cascades(f: &MultiplicativeColoring, k: u64) -> Result<CascadeScan> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "cascade length must be positive".into(),
        ));
    }
    let values = f.values();
    let horizon = f.horizon() as u64;
    let roots = horizon / k;
    let (max_balance, worst_root) = (1..=roots)
        .into_par_iter()
        .map(|d| {
            let s: i64 = (1..=k).map(|i| values[(i * d) as usize] as i64).sum();
            (s.unsigned_abs(), d)
        })
        .reduce(
            || (0, u64::MAX),
            |a, b| {
                if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
                    a
                } else {
                    b
                }
            },
        );
    Ok(CascadeScan {
        length: k,
        cascades: roots,
        max_balance,
        worst_root: (roots > 0).then_some(worst_root),
    })
}
