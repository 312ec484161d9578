//! Rainbow colorings of cascades and windows of the arithmetic graph `B_k`,
//! where `a ~ b` iff `max(a, b) / gcd(a, b) <= k`.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::clique::{find_clique, max_clique, BitGraph};
use crate::coloring::{exact_dsatur, greedy_dsatur, is_proper};
use crate::error::{Error, Result};
use crate::sieve::is_prime;

pub const DEFAULT_EXACT_CAP: usize = 60;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
pub const MAX_WINDOW: u64 = 20_000;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `max(a, b) / gcd(a, b)`.
pub fn arithmetic_proximity(a: u64, b: u64) -> u64 {
    a.max(b) / gcd(a, b)
}

/// Color of `n` in `1..p`: the part of `n` coprime to `p`, reduced mod `p`.
/// Every cascade of length `p - 1` receives all `p - 1` colors.
pub fn rainbow_color(p: u64, n: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "rainbow colors start at n = 1".into(),
        ));
    }
    Ok(coprime_part(p, n) % p)
}

fn coprime_part(p: u64, mut n: u64) -> u64 {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RainbowViolation {
    pub root: u64,
    /// Two cascade positions (multipliers) sharing a color.
    pub first: u64,
    pub second: u64,
    pub color: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RainbowReport {
    pub p: u64,
    pub horizon: u64,
    pub cascades: u64,
    pub rainbow: bool,
    pub violation: Option<RainbowViolation>,
}

/// Checks every cascade `{d, 2d, ..., (p-1)d}` with `(p-1)d <= horizon`.
pub fn verify_rainbow(p: u64, horizon: u64) -> Result<RainbowReport> {
    verify_rainbow_with(p, horizon, |n| coprime_part(p, n) % p)
}

/// As [`verify_rainbow`], with an arbitrary coloring into `0..p`.
pub fn verify_rainbow_with(
    p: u64,
    horizon: u64,
    color: impl Fn(u64) -> u64 + Sync,
) -> Result<RainbowReport> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let k = p - 1;
    let cascades = horizon / k;
    let violation = (1..=cascades).into_par_iter().find_map_first(|d| {
        let mut holder = vec![0u64; p as usize];
        for i in 1..=k {
            let c = color(i * d);
            let slot = &mut holder[c as usize];
            if *slot != 0 {
                return Some(RainbowViolation {
                    root: d,
                    first: *slot,
                    second: i,
                    color: c,
                });
            }
            *slot = i;
        }
        None
    });
    Ok(RainbowReport {
        p,
        horizon,
        cascades,
        rainbow: violation.is_none(),
        violation,
    })
}

/// The induced subgraph of `B_k` on `lo..=hi`; vertex `i` is the number `lo + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithmeticGraphWindow {
    k: u64,
    lo: u64,
    hi: u64,
    graph: BitGraph,
}

impl ArithmeticGraphWindow {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn graph(&self) -> &BitGraph {
        &self.graph
    }

    pub fn number(&self, vertex: usize) -> u64 {
        self.lo + vertex as u64
    }

    pub fn adjacent(&self, a: u64, b: u64) -> bool {
        self.graph
            .has_edge((a - self.lo) as usize, (b - self.lo) as usize)
    }

    /// Edges as number pairs `(a, b)`, `a < b`, sorted.
    pub fn edges(&self) -> Vec<(u64, u64)> {
        (0..self.len())
            .flat_map(|a| {
                self.graph
                    .neighbors(a)
                    .iter()
                    .filter(move |&b| b > a)
                    .map(move |b| (self.number(a), self.number(b)))
            })
            .collect()
    }

    /// Edge list text with a `n <hi>` header; vertex ids are the numbers.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.hi);
        for (a, b) in self.edges() {
            writeln!(out, "{a} {b}").expect("string write");
        }
        out
    }
}

/// Builds the window by walking each cascade `{d, ..., kd}` that meets it.
pub fn build_window(k: u64, lo: u64, hi: u64) -> Result<ArithmeticGraphWindow> {
    if k == 0 || lo == 0 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "window needs k >= 1 and 1 <= lo <= hi (got k = {k}, [{lo}, {hi}])"
        )));
    }
    if hi - lo + 1 > MAX_WINDOW {
        return Err(Error::BudgetExceeded {
            required: (hi - lo + 1) as u128,
            budget: MAX_WINDOW as u128,
        });
    }
    let mut graph = BitGraph::new((hi - lo + 1) as usize);
    let index = |n: u64| (n - lo) as usize;
    for d in 1..=hi / 2 {
        let first = lo.div_ceil(d).max(1);
        let last = (hi / d).min(k);
        for i in first..=last {
            for j in i + 1..=last {
                // only the root d = gcd adds the pair, so each edge is set once
                if gcd(i, j) == 1 {
                    graph.add_edge(index(i * d), index(j * d));
                }
            }
        }
    }
    Ok(ArithmeticGraphWindow { k, lo, hi, graph })
}

/// A clique of exactly `size` numbers, if the window has one.
pub fn clique_probe(window: &ArithmeticGraphWindow, size: usize) -> Option<Vec<u64>> {
    if size == 0 {
        return Some(Vec::new());
    }
    let found = find_clique(window.graph(), size).clique;
    (found.len() == size).then(|| found.into_iter().map(|v| window.number(v)).collect())
}

pub fn clique_number(window: &ArithmeticGraphWindow) -> usize {
    max_clique(window.graph()).len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChromaticMode {
    Greedy,
    Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticReport {
    pub k: u64,
    pub lo: u64,
    pub hi: u64,
    pub mode: ChromaticMode,
    pub colors: usize,
    /// True when `colors` is the chromatic number of the window.
    pub optimal: bool,
    pub lower_bound: usize,
    /// For `k = p - 1`: whether the rainbow coloring is proper on the window.
    pub rainbow_certified: Option<bool>,
    /// `colors > k`, which would contradict the conjectured `chi(B_k) = k`.
    pub experimental: bool,
    /// Color of each number `lo..=hi`, from 1.
    pub coloring: Vec<usize>,
}

pub fn chromatic_probe(
    window: &ArithmeticGraphWindow,
    mode: ChromaticMode,
    exact_cap: usize,
    node_budget: u64,
) -> Result<ChromaticReport> {
    let g = window.graph();
    let (coloring, optimal, lower_bound) = match mode {
        ChromaticMode::Greedy => {
            let c = greedy_dsatur(g);
            let lower = usize::from(!g.is_empty());
            (c, false, lower)
        }
        ChromaticMode::Exact => {
            if window.len() > exact_cap {
                return Err(Error::BudgetExceeded {
                    required: window.len() as u128,
                    budget: exact_cap as u128,
                });
            }
            let r = exact_dsatur(g, node_budget);
            (r.coloring, r.optimal, r.lower_bound)
        }
    };
    debug_assert!(is_proper(g, &coloring.colors));
    let p = window.k() + 1;
    let rainbow_certified = is_prime(p).then(|| {
        let colors: Vec<usize> = (0..window.len())
            .map(|v| (coprime_part(p, window.number(v)) % p) as usize)
            .collect();
        is_proper(g, &colors)
    });
    Ok(ChromaticReport {
        k: window.k(),
        lo: window.lo(),
        hi: window.hi(),
        mode,
        colors: coloring.count,
        optimal,
        lower_bound,
        rainbow_certified,
        experimental: coloring.count as u64 > window.k(),
        coloring: coloring.colors.iter().map(|c| c + 1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rainbow_colors() {
        assert_eq!(rainbow_color(3, 12).unwrap(), 1);
        assert_eq!(rainbow_color(5, 7).unwrap(), 2);
        assert_eq!(rainbow_color(2, 8).unwrap(), 1);
        assert!(rainbow_color(4, 3).is_err());
        assert!(rainbow_color(3, 0).is_err());
    }

    #[test]
    fn rainbow_small_primes() {
        for p in [2, 3, 5, 7] {
            let r = verify_rainbow(p, 10_000).unwrap();
            assert!(r.rainbow, "p = {p}");
            assert_eq!(r.cascades, 10_000 / (p - 1));
        }
    }

    #[test]
    fn rainbow_detects_bad_coloring() {
        let r = verify_rainbow_with(5, 100, |n| n % 2).unwrap();
        let v = r.violation.unwrap();
        assert_eq!((v.root, v.first, v.second), (1, 1, 3));
    }

    #[test]
    fn window_k3() {
        let w = build_window(3, 1, 6).unwrap();
        for (a, b) in [(1, 2), (1, 3), (2, 3), (2, 4), (2, 6), (3, 6), (4, 6)] {
            assert!(w.adjacent(a, b), "{a}-{b}");
        }
        assert!(!w.adjacent(1, 4));
        assert!(!w.adjacent(3, 4));
        let oracle: Vec<(u64, u64)> = (1..=6)
            .flat_map(|a| (a + 1..=6).map(move |b| (a, b)))
            .filter(|&(a, b)| arithmetic_proximity(a, b) <= 3)
            .collect();
        assert_eq!(w.edges(), oracle);
    }

    #[test]
    fn window_small_k() {
        assert!(build_window(1, 1, 30).unwrap().edges().is_empty());
        assert_eq!(build_window(2, 1, 4).unwrap().edges(), [(1, 2), (2, 4)]);
        let w = build_window(2, 3, 8).unwrap();
        assert_eq!(w.edges(), [(3, 6), (4, 8)]);
        assert!(w.to_edge_list().starts_with("n 8\n3 6\n"));
        assert!(build_window(0, 1, 3).is_err());
        assert!(build_window(2, 5, 3).is_err());
    }

    #[test]
    fn cliques_in_windows() {
        let w = build_window(4, 1, 50).unwrap();
        let c = clique_probe(&w, 4).unwrap();
        assert_eq!(c.len(), 4);
        assert!(clique_probe(&w, 5).is_none());
        assert!(clique_probe(&build_window(2, 1, 10).unwrap(), 3).is_none());
    }

    #[test]
    fn chromatic_k6() {
        let w = build_window(6, 1, 60).unwrap();
        let r = chromatic_probe(
            &w,
            ChromaticMode::Exact,
            DEFAULT_EXACT_CAP,
            DEFAULT_NODE_BUDGET,
        )
        .unwrap();
        assert_eq!(r.colors, 6);
        assert!(r.optimal);
        assert_eq!(r.rainbow_certified, Some(true));
        assert!(!r.experimental);

        let w = build_window(1, 1, 10).unwrap();
        let r = chromatic_probe(
            &w,
            ChromaticMode::Exact,
            DEFAULT_EXACT_CAP,
            DEFAULT_NODE_BUDGET,
        )
        .unwrap();
        assert_eq!(r.colors, 1);

        let w = build_window(4, 1, 61).unwrap();
        assert!(chromatic_probe(&w, ChromaticMode::Exact, DEFAULT_EXACT_CAP, 10).is_err());
    }
}
