//! Completely multiplicative `±1` colorings of `1..=N`.
//!
//! A coloring is fixed by the signs of the primes; every other value follows
//! from `f(ab) = f(a) f(b)` and `f(1) = +1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sieve::{self, SpfTable};

/// How prime signs are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignRule {
    /// Every prime is `-1` (Liouville's function).
    Liouville,
    /// `+1` for `p ≡ 1 (mod 3)` and `p = 3`, `-1` for `p ≡ 2 (mod 3)`.
    Mod3Character,
    /// Quadratic residues mod `p` are `+1`, non-residues `-1`, and `p` itself
    /// is `+1`: the two halves of the rainbow palette mod `p`.
    ResidueSplit(u64),
    /// Explicit prime signs, with an optional sign for unlisted primes.
    Explicit {
        signs: BTreeMap<u64, i8>,
        default: Option<i8>,
    },
}

impl SignRule {
    pub fn sign_of(&self, p: u64) -> Result<i8> {
        match self {
            SignRule::Liouville => Ok(-1),
            SignRule::Mod3Character => Ok(if p == 3 || p % 3 == 1 { 1 } else { -1 }),
            SignRule::ResidueSplit(modulus) => {
                if p == *modulus {
                    Ok(1)
                } else {
                    Ok(legendre(p, *modulus))
                }
            }
            SignRule::Explicit { signs, default } => signs
                .get(&p)
                .copied()
                .or(*default)
                .ok_or_else(|| Error::InvalidArgument(format!("no sign given for prime {p}"))),
        }
    }

    pub fn residue_split(p: u64) -> Result<Self> {
        if p < 3 || !sieve::is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "residue split needs an odd prime, got {p}"
            )));
        }
        Ok(SignRule::ResidueSplit(p))
    }

    /// Parses `p sign` lines (`sign` is `+`, `-`, `+1` or `-1`), `#` comments,
    /// and an optional `default <sign>` line.
    pub fn parse_explicit(text: &str) -> Result<Self> {
        let mut signs = BTreeMap::new();
        let mut default = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::parse(i + 1, "expected `<prime> <sign>`"));
            }
            let sign =
                parse_sign(tokens[1]).ok_or_else(|| Error::parse(i + 1, "sign must be + or -"))?;
            if tokens[0] == "default" {
                default = Some(sign);
                continue;
            }
            let p: u64 = tokens[0]
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("not an integer: {:?}", tokens[0])))?;
            if !sieve::is_prime(p) {
                return Err(Error::parse(i + 1, format!("{p} is not prime")));
            }
            signs.insert(p, sign);
        }
        Ok(SignRule::Explicit { signs, default })
    }
}

fn parse_sign(token: &str) -> Option<i8> {
    match token {
        "+" | "+1" | "1" => Some(1),
        "-" | "-1" => Some(-1),
        _ => None,
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p` and `p ∤ a`, by Euler's
/// criterion.
fn legendre(a: u64, p: u64) -> i8 {
    let mut result = 1u128;
    let mut base = (a % p) as u128;
    let mut exp = (p - 1) / 2;
    let m = p as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// A completely multiplicative coloring on `1..=horizon`.
#[derive(Debug, Clone)]
pub struct MultiplicativeColoring {
    spf: SpfTable,
    // sign of each prime, 0 elsewhere
    prime_signs: Vec<i8>,
}

impl MultiplicativeColoring {
    pub fn horizon(&self) -> u32 {
        self.spf.limit()
    }

    pub fn spf_table(&self) -> &SpfTable {
        &self.spf
    }

    pub fn prime_sign(&self, p: u32) -> Option<i8> {
        self.spf.is_prime(p).then(|| self.prime_signs[p as usize])
    }

    /// `f(n)` by walking the smallest-prime-factor chain of `n`.
    pub fn eval(&self, n: u64) -> Result<i8> {
        let horizon = self.horizon() as u64;
        if n == 0 || n > horizon {
            return Err(Error::OutOfHorizon { value: n, horizon });
        }
        let mut m = n as u32;
        let mut sign = 1i8;
        while m > 1 {
            let p = self.spf.spf(m);
            sign *= self.prime_signs[p as usize];
            m /= p;
        }
        Ok(sign)
    }

    /// `f(n)` for every `n` in `0..=horizon` (`f(0)` reported as 0).
    pub fn values(&self) -> Vec<i8> {
        let limit = self.horizon() as usize;
        let mut out = vec![0i8; limit + 1];
        if limit >= 1 {
            out[1] = 1;
        }
        for n in 2..=limit {
            let p = self.spf.spf(n as u32) as usize;
            out[n] = self.prime_signs[p] * out[n / p];
        }
        out
    }
}

/// Builds the coloring on `1..=horizon` with prime signs from `rule`.
pub fn build_coloring(rule: &SignRule, horizon: u32) -> Result<MultiplicativeColoring> {
    if horizon < 1 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let spf = SpfTable::new(horizon);
    let mut prime_signs = vec![0i8; horizon as usize + 1];
    for &p in spf.primes() {
        prime_signs[p as usize] = rule.sign_of(p as u64)?;
    }
    Ok(MultiplicativeColoring { spf, prime_signs })
}

/// Builds a coloring directly from a prime-sign function.
pub fn build_coloring_with(
    horizon: u32,
    sign: impl Fn(u64) -> i8,
) -> Result<MultiplicativeColoring> {
    if horizon < 1 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    let spf = SpfTable::new(horizon);
    let mut prime_signs = vec![0i8; horizon as usize + 1];
    for &p in spf.primes() {
        let s = sign(p as u64);
        if s != 1 && s != -1 {
            return Err(Error::InvalidArgument(format!(
                "sign of {p} must be ±1, got {s}"
            )));
        }
        prime_signs[p as usize] = s;
    }
    Ok(MultiplicativeColoring { spf, prime_signs })
}

/// Prefix sums `sum_{i<=n} f(i)` for `n` in `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceProfile {
    prefix: Vec<i64>,
}

impl BalanceProfile {
    pub fn horizon(&self) -> u64 {
        (self.prefix.len() - 1) as u64
    }

    pub fn prefix(&self, n: u64) -> i64 {
        self.prefix[n as usize]
    }

    pub fn prefixes(&self) -> &[i64] {
        &self.prefix
    }

    /// `b_f(n) = |prefix(n)|`.
    pub fn balance(&self, n: u64) -> u64 {
        self.prefix[n as usize].unsigned_abs()
    }

    /// Fraction of `n` in `1..=N` with `b_f(n) <= c`.
    pub fn density_within(&self, c: u64) -> f64 {
        let n = self.horizon();
        if n == 0 {
            return 0.0;
        }
        let hits = (1..=n).filter(|&i| self.balance(i) <= c).count();
        hits as f64 / n as f64
    }
}

pub fn balance_profile(f: &MultiplicativeColoring, n: u32) -> Result<BalanceProfile> {
    if n > f.horizon() {
        return Err(Error::OutOfHorizon {
            value: n as u64,
            horizon: f.horizon() as u64,
        });
    }
    let values = f.values();
    let mut prefix = Vec::with_capacity(n as usize + 1);
    let mut acc = 0i64;
    prefix.push(0);
    for &x in &values[1..=n as usize] {
        acc += x as i64;
        prefix.push(acc);
    }
    Ok(BalanceProfile { prefix })
}

/// Number of digits equal to 1 in the base-3 expansion of `n`.
pub fn ternary_ones(mut n: u64) -> u32 {
    let mut count = 0;
    while n > 0 {
        if n % 3 == 1 {
            count += 1;
        }
        n /= 3;
    }
    count
}

/// First `n >= 2`, `n <= limit`, with `sum_{i<=n} lambda(i) > 0`.
pub fn polya_scan(limit: u64) -> Option<u64> {
    sieve::first_positive_liouville_sum(limit)
}

/// `|sum_{i=1..k} f(i d)|`, computed directly and through
/// `f(d) * sum_{i<=k} f(i)`; the two must agree.
pub fn cascade_balance(f: &MultiplicativeColoring, d: u64, k: u64) -> Result<u64> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidArgument(
            "cascade root and length must be positive".into(),
        ));
    }
    let top = d.checked_mul(k).ok_or(Error::Overflow("cascade"))?;
    if top > f.horizon() as u64 {
        return Err(Error::OutOfHorizon {
            value: top,
            horizon: f.horizon() as u64,
        });
    }
    let mut direct = 0i64;
    let mut base = 0i64;
    for i in 1..=k {
        direct += f.eval(i * d)? as i64;
        base += f.eval(i)? as i64;
    }
    let via_identity = f.eval(d)? as i64 * base;
    if direct != via_identity {
        return Err(Error::Inconsistent(format!(
            "cascade at {d} of length {k}: direct sum {direct}, f(d)*prefix {via_identity}"
        )));
    }
    Ok(direct.unsigned_abs())
}

/// Whether a strictly increasing set is divinely colored: at least half of
/// `a_2..a_n` differ in color from `a_1`.
pub fn is_divine(f: &MultiplicativeColoring, set: &[u64]) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::InvalidArgument("set must be non-empty".into()));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "set must be strictly increasing".into(),
        ));
    }
    let colors: Vec<i8> = set.iter().map(|&a| f.eval(a)).collect::<Result<_>>()?;
    let first = colors[0];
    let differing = colors[1..].iter().filter(|&&c| c != first).count();
    let by_count = 2 * differing >= colors.len() - 1;
    if colors.len() > 1 {
        let sum: i64 = colors.iter().map(|&c| c as i64).sum();
        let by_sum = if first == 1 { sum <= 1 } else { sum >= -1 };
        if by_sum != by_count {
            return Err(Error::Inconsistent(format!(
                "divine check: count form {by_count}, sum form {by_sum}"
            )));
        }
    }
    Ok(by_count)
}

/// Every `k <= limit` whose base-3 expansion has no digit 1, after checking
/// that the mod-3 character coloring sums to zero on `1..=k` for each.
pub fn balanceable_ternary_set(limit: u32) -> Result<Vec<u64>> {
    let members: Vec<u64> = (1..=limit as u64)
        .filter(|&k| !has_ternary_one(k))
        .collect();
    if members.is_empty() {
        return Ok(members);
    }
    let g = build_coloring(&SignRule::Mod3Character, limit)?;
    let profile = balance_profile(&g, limit)?;
    if let Some(&k) = members.iter().find(|&&k| profile.prefix(k) != 0) {
        return Err(Error::Inconsistent(format!(
            "prefix of the mod-3 character at {k} is {}",
            profile.prefix(k)
        )));
    }
    Ok(members)
}

fn has_ternary_one(mut n: u64) -> bool {
    while n > 0 {
        if n % 3 == 1 {
            return true;
        }
        n /= 3;
    }
    false
}

/// One CSV row per `n`: `n,f(n),prefix`.
pub struct CsvRows<'a> {
    values: &'a [i8],
    profile: &'a BalanceProfile,
}

impl<'a> CsvRows<'a> {
    pub fn new(values: &'a [i8], profile: &'a BalanceProfile) -> Self {
        CsvRows { values, profile }
    }
}

impl fmt::Display for CsvRows<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "n,f(n),prefix")?;
        for n in 1..=self.profile.horizon() {
            writeln!(
                out,
                "{},{},{}",
                n,
                self.values[n as usize],
                self.profile.prefix(n)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn liouville(n: u32) -> MultiplicativeColoring {
        build_coloring(&SignRule::Liouville, n).unwrap()
    }

    #[test]
    fn liouville_worked_values() {
        let l = liouville(50);
        assert_eq!(l.eval(12).unwrap(), -1);
        assert_eq!(l.eval(40).unwrap(), 1);
        assert_eq!(l.eval(1).unwrap(), 1);
        assert!(matches!(l.eval(51), Err(Error::OutOfHorizon { .. })));
        assert!(matches!(l.eval(0), Err(Error::OutOfHorizon { .. })));
    }

    #[test]
    fn horizon_one_and_zero() {
        let f = liouville(1);
        assert_eq!(f.eval(1).unwrap(), 1);
        assert_eq!(balance_profile(&f, 1).unwrap().prefix(1), 1);
        assert!(build_coloring(&SignRule::Liouville, 0).is_err());
    }

    #[test]
    fn character_rule_signs() {
        let g = build_coloring(&SignRule::Mod3Character, 100).unwrap();
        assert_eq!(g.prime_sign(2), Some(-1));
        assert_eq!(g.prime_sign(3), Some(1));
        assert_eq!(g.prime_sign(7), Some(1));
        assert_eq!(g.prime_sign(11), Some(-1));
        assert_eq!(g.prime_sign(9), None);
    }

    #[test]
    fn liouville_prefix_at_ten_is_zero() {
        let p = balance_profile(&liouville(10), 10).unwrap();
        assert_eq!(p.prefix(10), 0);
        assert_eq!(&p.prefixes()[1..4], &[1, 0, -1]);
    }

    #[test]
    fn ternary_digit_counts() {
        assert_eq!(ternary_ones(1), 1);
        assert_eq!(ternary_ones(9), 1);
        assert_eq!(ternary_ones(8), 0);
        assert_eq!(ternary_ones(13), 3);
        assert_eq!(ternary_ones(0), 0);
    }

    #[test]
    fn character_prefix_at_nine() {
        let g = build_coloring(&SignRule::Mod3Character, 9).unwrap();
        assert_eq!(
            balance_profile(&g, 9).unwrap().prefix(9),
            ternary_ones(9) as i64
        );
    }

    #[test]
    fn cascade_balances() {
        let g = build_coloring(&SignRule::Mod3Character, 100).unwrap();
        assert_eq!(cascade_balance(&g, 5, 9).unwrap(), ternary_ones(9) as u64);
        let l = liouville(100);
        assert_eq!(cascade_balance(&l, 2, 10).unwrap(), 0);
        assert_eq!(cascade_balance(&l, 37, 1).unwrap(), 1);
        assert!(cascade_balance(&l, 11, 10).is_err());
    }

    #[test]
    fn divine_sets() {
        let l = liouville(20);
        assert!(is_divine(&l, &[7]).unwrap());
        assert!(is_divine(&l, &[1, 2, 3]).unwrap());
        assert!(!is_divine(&l, &[1, 4, 9]).unwrap());
        assert!(is_divine(&l, &[3, 1]).is_err());
    }

    #[test]
    fn ternary_balanceable_set() {
        assert_eq!(balanceable_ternary_set(10).unwrap(), vec![2, 6, 8]);
        assert_eq!(balanceable_ternary_set(1).unwrap(), Vec::<u64>::new());
        let g = build_coloring(&SignRule::Mod3Character, 2).unwrap();
        assert_eq!(balance_profile(&g, 2).unwrap().prefix(2), 0);
    }

    #[test]
    fn polya_small() {
        assert_eq!(polya_scan(2), None);
        assert_eq!(polya_scan(10_000), None);
    }

    #[test]
    fn residue_split_balances_rainbow_cascades() {
        // each cascade of length p - 1 sees every nonzero residue once
        let f = build_coloring(&SignRule::residue_split(7).unwrap(), 700).unwrap();
        for d in 1..=100 {
            assert_eq!(cascade_balance(&f, d, 6).unwrap(), 0, "root {d}");
        }
        assert!(SignRule::residue_split(2).is_err());
        assert!(SignRule::residue_split(9).is_err());
    }

    #[test]
    fn explicit_rule_parsing() {
        let rule = SignRule::parse_explicit("# signs\n2 +\n3 -1\ndefault -\n").unwrap();
        assert_eq!(rule.sign_of(2).unwrap(), 1);
        assert_eq!(rule.sign_of(3).unwrap(), -1);
        assert_eq!(rule.sign_of(5).unwrap(), -1);
        let strict = SignRule::parse_explicit("2 +").unwrap();
        assert!(build_coloring(&strict, 10).is_err());
        assert!(SignRule::parse_explicit("4 +").is_err());
    }

    #[test]
    fn density_counts() {
        let p = balance_profile(&liouville(10), 10).unwrap();
        assert_eq!(p.density_within(0), 0.4);
    }
}
