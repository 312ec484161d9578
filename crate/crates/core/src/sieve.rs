//! Smallest-prime-factor tables and segmented Liouville sieving.

use rayon::prelude::*;

/// `spf[n]` = smallest prime factor of `n` for `2 <= n <= limit`;
/// `spf[0] = 0`, `spf[1] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfTable {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfTable {
    /// Linear sieve up to `limit` inclusive.
    pub fn new(limit: u32) -> Self {
        let len = limit as usize + 1;
        let mut spf = vec![0u32; len.max(2)];
        spf[1] = 1;
        let mut primes = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let m = i * p as usize;
                if p > si || m >= len {
                    break;
                }
                spf[m] = p;
            }
        }
        spf.truncate(len);
        SpfTable { spf, primes }
    }

    pub fn limit(&self) -> u32 {
        (self.spf.len() - 1) as u32
    }

    pub fn spf(&self, n: u32) -> u32 {
        self.spf[n as usize]
    }

    pub fn is_prime(&self, n: u32) -> bool {
        n >= 2 && self.spf[n as usize] == n
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Prime factors of `n` with multiplicity, ascending.
    pub fn factor(&self, mut n: u32) -> Vec<u32> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf(n);
            out.push(p);
            n /= p;
        }
        out
    }
}

/// Primes up to `limit` (simple Eratosthenes; used for sieving bases).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit as usize + 1];
    let mut out = Vec::new();
    for i in 2..=limit as usize {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit as usize {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `lambda(n)` for `n` in `0..=limit` from an spf table (`lambda(0)` is 0).
pub fn liouville_table(spf: &SpfTable) -> Vec<i8> {
    let limit = spf.limit() as usize;
    let mut out = vec![0i8; limit + 1];
    if limit >= 1 {
        out[1] = 1;
    }
    for n in 2..=limit {
        let p = spf.spf(n as u32) as usize;
        out[n] = -out[n / p];
    }
    out
}

pub const SEGMENT_LEN: u64 = 1 << 16;

/// `lambda(n)` for `n` in `lo..hi`, using `base_primes` covering
/// `sqrt(hi - 1)`. No factor table is stored.
pub fn liouville_segment(lo: u64, hi: u64, base_primes: &[u64]) -> Vec<i8> {
    assert!(lo >= 1 && lo <= hi);
    let len = (hi - lo) as usize;
    let mut parity = vec![0u8; len];
    let mut found = vec![1u64; len];
    let top = hi.saturating_sub(1);
    for &p in base_primes {
        if p * p > top {
            break;
        }
        let mut pk = p;
        loop {
            let mut m = lo.div_ceil(pk) * pk;
            while m < hi {
                let i = (m - lo) as usize;
                parity[i] ^= 1;
                found[i] *= p;
                m += pk;
            }
            match pk.checked_mul(p) {
                Some(next) if next <= top => pk = next,
                _ => break,
            }
        }
    }
    (0..len)
        .map(|i| {
            let n = lo + i as u64;
            // one prime factor above the sieving bound may remain
            let odd = parity[i] ^ u8::from(found[i] != n);
            if odd == 1 {
                -1
            } else {
                1
            }
        })
        .collect()
}

/// `lambda(1..=limit)` assembled from independent segments (index 0 unused).
pub fn liouville_segmented(limit: u64) -> Vec<i8> {
    let base = primes_up_to(isqrt(limit) + 1);
    let starts: Vec<u64> = (1..=limit).step_by(SEGMENT_LEN as usize).collect();
    let mut out = vec![0i8];
    let parts: Vec<Vec<i8>> = starts
        .par_iter()
        .map(|&lo| liouville_segment(lo, (lo + SEGMENT_LEN).min(limit + 1), &base))
        .collect();
    for part in parts {
        out.extend(part);
    }
    out
}

/// Smallest `n >= 2` (and `<= limit`) with `sum_{i<=n} lambda(i) > 0`.
///
/// Segments are sieved in parallel batches; each reports its total and the
/// maximum of its running sum so the sequential pass only rescans the one
/// segment containing the crossing.
pub fn first_positive_liouville_sum(limit: u64) -> Option<u64> {
    if limit < 2 {
        return None;
    }
    let base = primes_up_to(isqrt(limit) + 1);
    let batch = (rayon::current_num_threads() as u64 * 8).max(8);
    let mut running: i64 = 0;
    let mut lo = 1u64;
    while lo <= limit {
        let starts: Vec<u64> = (0..batch)
            .map(|i| lo + i * SEGMENT_LEN)
            .filter(|&s| s <= limit)
            .collect();
        let summaries: Vec<(u64, i64, i64)> = starts
            .par_iter()
            .map(|&s| {
                let hi = (s + SEGMENT_LEN).min(limit + 1);
                let seg = liouville_segment(s, hi, &base);
                let mut acc = 0i64;
                // the n = 1 term is excluded from the "max" since the search starts at 2
                let mut best = i64::MIN;
                for (i, &x) in seg.iter().enumerate() {
                    acc += x as i64;
                    if s + i as u64 >= 2 {
                        best = best.max(acc);
                    }
                }
                (s, acc, best)
            })
            .collect();
        for (s, total, best) in summaries {
            if best != i64::MIN && running + best > 0 {
                let hi = (s + SEGMENT_LEN).min(limit + 1);
                let seg = liouville_segment(s, hi, &base);
                let mut acc = running;
                for (i, &x) in seg.iter().enumerate() {
                    acc += x as i64;
                    let n = s + i as u64;
                    if n >= 2 && acc > 0 {
                        return Some(n);
                    }
                }
                unreachable!("segment maximum promised a crossing");
            }
            running += total;
        }
        lo += batch * SEGMENT_LEN;
    }
    None
}

/// Streams smallest prime factors of `1, 2, 3, ...` segment by segment,
/// keeping only `O(sqrt(limit) + segment)` memory.
#[derive(Debug)]
pub struct SpfStream {
    limit: u64,
    base: Vec<u64>,
    block_lo: u64,
    block: Vec<u32>,
}

impl SpfStream {
    pub fn new(limit: u64) -> Self {
        SpfStream {
            limit,
            base: primes_up_to(isqrt(limit) + 1),
            block_lo: 1,
            block: Vec::new(),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Raises the limit in place; blocks already sieved stay valid.
    pub fn extend_limit(&mut self, limit: u64) {
        if limit > self.limit {
            self.limit = limit;
            self.base = primes_up_to(isqrt(limit) + 1);
        }
    }

    /// Smallest prime factor of `n` (`n` itself when prime, 1 for 1).
    /// Queries must stay within the current block or move forward.
    pub fn spf(&mut self, n: u64) -> u64 {
        assert!(
            n >= 1 && n <= self.limit,
            "spf query {n} outside 1..={}",
            self.limit
        );
        if n < self.block_lo {
            self.block_lo = 1;
            self.block.clear();
        }
        while n >= self.block_lo + self.block.len() as u64 {
            self.advance();
        }
        let v = self.block[(n - self.block_lo) as usize];
        if v == 0 {
            n
        } else {
            v as u64
        }
    }

    fn advance(&mut self) {
        let lo = self.block_lo + self.block.len() as u64;
        let hi = (lo + SEGMENT_LEN).min(self.limit + 1);
        let mut block = vec![0u32; (hi - lo) as usize];
        for &p in &self.base {
            if p * p >= hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m < hi {
                let slot = &mut block[(m - lo) as usize];
                if *slot == 0 {
                    *slot = p as u32;
                }
                m += p;
            }
        }
        if lo == 1 {
            block[0] = 1;
        }
        self.block_lo = lo;
        self.block = block;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spf_table_small_values() {
        let t = SpfTable::new(30);
        assert_eq!(t.spf(1), 1);
        assert_eq!(t.spf(2), 2);
        assert_eq!(t.spf(15), 3);
        assert_eq!(t.spf(29), 29);
        assert_eq!(t.factor(12), vec![2, 2, 3]);
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(SpfTable::new(1).limit(), 1);
    }

    #[test]
    fn liouville_first_ten() {
        let l = liouville_table(&SpfTable::new(10));
        assert_eq!(&l[1..], &[1, -1, -1, 1, -1, 1, -1, -1, 1, 1]);
    }

    #[test]
    fn segmented_matches_monolithic() {
        let limit = 300_000;
        let mono = liouville_table(&SpfTable::new(limit));
        let seg = liouville_segmented(limit as u64);
        assert_eq!(mono, {
            let mut s = seg.clone();
            s[0] = 0;
            s
        });
        // an unaligned window
        let base = primes_up_to(1000);
        let window = liouville_segment(123_457, 123_457 + 5000, &base);
        assert_eq!(&mono[123_457..123_457 + 5000], &window[..]);
    }

    #[test]
    fn no_positive_sum_early() {
        assert_eq!(first_positive_liouville_sum(2), None);
        assert_eq!(first_positive_liouville_sum(200_000), None);
    }

    #[test]
    fn spf_stream_matches_table() {
        let t = SpfTable::new(200_000);
        let mut s = SpfStream::new(200_000);
        for n in 1..=200_000u32 {
            assert_eq!(s.spf(n as u64), t.spf(n) as u64, "n = {n}");
        }
    }

    #[test]
    fn spf_stream_extends() {
        let t = SpfTable::new(300_000);
        let mut s = SpfStream::new(1000);
        for n in 1..=300_000u32 {
            if n as u64 > s.limit() {
                s.extend_limit(s.limit() * 2);
            }
            assert_eq!(s.spf(n as u64), t.spf(n) as u64, "n = {n}");
        }
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(906_150_257), 30102);
    }
}
