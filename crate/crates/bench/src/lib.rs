//! Deterministic fixtures shared by the benchmarks.

use cascadelab::Graph;

/// `n x 2` ladder: two paths joined by rungs.
pub fn ladder(n: u32) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        pairs.push((a, b));
        if i + 1 < n {
            pairs.push((a, a + 2));
            pairs.push((b, b + 2));
        }
    }
    Graph::new(2 * n, pairs).expect("ladder is simple")
}

/// Circulant graph on `n` vertices joining `i` to `i + s` for each step `s`.
pub fn circulant(n: u32, steps: &[u32]) -> Graph {
    let mut pairs = Vec::new();
    for i in 0..n {
        for &s in steps {
            let j = (i + s) % n;
            let (a, b) = (i.min(j) + 1, i.max(j) + 1);
            if a != b && !pairs.contains(&(a, b)) {
                pairs.push((a, b));
            }
        }
    }
    Graph::new(n, pairs).expect("circulant is simple")
}
