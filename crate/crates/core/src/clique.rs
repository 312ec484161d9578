//! Dense bitset graphs and a branch-and-bound clique search.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = BitSet::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Undirected simple graph on `0..n` with bitset rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGraph {
    rows: Vec<BitSet>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        BitGraph {
            rows: vec![BitSet::new(n); n],
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "self-loop");
        self.rows[a].insert(b);
        self.rows[b].insert(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| a != b && self.has_edge(a, b)))
    }
}

/// Greedy coloring of `candidates` used as an upper bound: returns vertices
/// in the order colored with the color count reached so far.
fn color_bound(g: &BitGraph, candidates: &BitSet) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(candidates.count());
    let mut uncolored = candidates.clone();
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut avail = uncolored.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            uncolored.remove(v);
            for u in g.neighbors(v).intersect(&avail).iter() {
                avail.remove(u);
            }
            out.push((v, color));
        }
    }
    out
}

struct CliqueSearch<'a> {
    g: &'a BitGraph,
    target: usize,
    best: Vec<usize>,
    nodes: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: &mut Vec<usize>, candidates: BitSet) -> bool {
        self.nodes += 1;
        let mut candidates = candidates;
        let order = color_bound(self.g, &candidates);
        for &(v, bound) in order.iter().rev() {
            if current.len() + bound <= self.best.len() {
                return false;
            }
            current.push(v);
            let next = candidates.intersect(self.g.neighbors(v));
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                    if self.best.len() >= self.target {
                        return true;
                    }
                }
            } else if self.expand(current, next) {
                return true;
            }
            current.pop();
            candidates.remove(v);
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Largest clique seen; of size `target` when one exists.
    pub clique: Vec<usize>,
    pub nodes: u64,
}

/// Searches for a clique of at least `target` vertices; stops at the first
/// one found. With `target = usize::MAX` it returns a maximum clique.
pub fn find_clique(g: &BitGraph, target: usize) -> CliqueResult {
    let mut search = CliqueSearch {
        g,
        target,
        best: Vec::new(),
        nodes: 0,
    };
    if !g.is_empty() && target > 0 {
        search.expand(&mut Vec::new(), BitSet::full(g.len()));
    }
    let mut clique = search.best;
    clique.truncate(target);
    clique.sort_unstable();
    CliqueResult {
        clique,
        nodes: search.nodes,
    }
}

pub fn max_clique(g: &BitGraph) -> Vec<usize> {
    find_clique(g, usize::MAX).clique
}
