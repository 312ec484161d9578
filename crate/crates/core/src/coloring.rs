//! DSATUR coloring: a greedy upper bound and an exact branch-and-bound.

use crate::clique::{max_clique, BitGraph};

/// Colors `0..count` per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub count: usize,
}

pub fn is_proper(g: &BitGraph, colors: &[usize]) -> bool {
    (0..g.len()).all(|v| g.neighbors(v).iter().all(|u| colors[u] != colors[v]))
}

/// Saturation-tracking state shared by the greedy and exact solvers.
struct Dsatur<'a> {
    g: &'a BitGraph,
    colors: Vec<Option<usize>>,
    /// `seen[v][c]` counts colored neighbours of `v` holding color `c`.
    seen: Vec<Vec<u32>>,
    saturation: Vec<usize>,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a BitGraph) -> Self {
        let n = g.len();
        Dsatur {
            g,
            colors: vec![None; n],
            seen: vec![vec![0; n + 1]; n],
            saturation: vec![0; n],
        }
    }

    /// Highest saturation, then highest degree, then lowest index.
    fn pick(&self) -> Option<usize> {
        (0..self.g.len())
            .filter(|&v| self.colors[v].is_none())
            .max_by(|&a, &b| {
                (self.saturation[a], self.g.degree(a), std::cmp::Reverse(a)).cmp(&(
                    self.saturation[b],
                    self.g.degree(b),
                    std::cmp::Reverse(b),
                ))
            })
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = Some(c);
        for u in self.g.neighbors(v).iter() {
            if self.seen[u][c] == 0 {
                self.saturation[u] += 1;
            }
            self.seen[u][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colors[v] = None;
        for u in self.g.neighbors(v).iter() {
            self.seen[u][c] -= 1;
            if self.seen[u][c] == 0 {
                self.saturation[u] -= 1;
            }
        }
    }

    fn finish(&self) -> Vec<usize> {
        self.colors
            .iter()
            .map(|c| c.expect("all colored"))
            .collect()
    }
}

pub fn greedy_dsatur(g: &BitGraph) -> Coloring {
    let mut st = Dsatur::new(g);
    let mut count = 0;
    while let Some(v) = st.pick() {
        let c = (0..).find(|&c| st.seen[v][c] == 0).expect("a free color");
        count = count.max(c + 1);
        st.assign(v, c);
    }
    Coloring {
        colors: st.finish(),
        count,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactColoring {
    pub coloring: Coloring,
    /// False when the node budget ran out; `coloring` is then only an upper bound.
    pub optimal: bool,
    pub lower_bound: usize,
    pub nodes: u64,
}

struct Exact<'a> {
    st: Dsatur<'a>,
    best: Vec<usize>,
    best_count: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Exact<'_> {
    fn search(&mut self, used: usize) {
        if self.best_count == self.lower || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let Some(v) = self.st.pick() else {
            self.best = self.st.finish();
            self.best_count = used;
            return;
        };
        // a new color is only worth opening if it still beats the incumbent
        let limit = (used + 1).min(self.best_count - 1);
        for c in 0..limit {
            if self.st.seen[v][c] != 0 {
                continue;
            }
            self.st.assign(v, c);
            self.search(used.max(c + 1));
            self.st.unassign(v, c);
            if self.best_count == self.lower || self.exhausted {
                return;
            }
        }
    }
}

/// Chromatic number by DSATUR branch-and-bound, starting from the greedy
/// bound and stopping as soon as the maximum-clique lower bound is met.
pub fn exact_dsatur(g: &BitGraph, node_budget: u64) -> ExactColoring {
    let greedy = greedy_dsatur(g);
    let lower = max_clique(g).len();
    let mut ex = Exact {
        st: Dsatur::new(g),
        best: greedy.colors,
        best_count: greedy.count,
        lower,
        nodes: 0,
        budget: node_budget,
        exhausted: false,
    };
    ex.search(0);
    ExactColoring {
        coloring: Coloring {
            colors: ex.best,
            count: ex.best_count,
        },
        optimal: !ex.exhausted,
        lower_bound: lower,
        nodes: ex.nodes,
    }
}
