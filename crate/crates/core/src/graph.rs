//! Simple graphs, hypergraphs and low-indegree orientations.
//!
//! All vertex ids exposed by this module are 1-based. Edges are stored as
//! normalized pairs `(u, v)` with `u < v`, in the order they were supplied;
//! that order defines the edge index used by decorations and polynomials.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An undirected edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// A simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    edges: Vec<Edge>,
    // adjacency[v - 1] = (neighbor, edge index), sorted by neighbor
    adjacency: Vec<Vec<(Vertex, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new(n: u32, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (i, (a, b)) in edges.into_iter().enumerate() {
            let line = i + 1;
            if a == b {
                return Err(Error::parse(line, format!("self-loop at vertex {a}")));
            }
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::parse(line, format!("vertex {x} outside 1..={n}")));
                }
            }
            let e = Edge::new(a, b);
            if !seen.insert(e) {
                return Err(Error::parse(line, format!("duplicate edge {e}")));
            }
            list.push(e);
        }
        Ok(Self::from_checked(n, list))
    }

    fn from_checked(n: u32, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n as usize];
        for (idx, e) in edges.iter().enumerate() {
            adjacency[(e.u - 1) as usize].push((e.v, idx));
            adjacency[(e.v - 1) as usize].push((e.u, idx));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adjacency,
        }
    }

    pub fn empty(n: u32) -> Self {
        Self::from_checked(n, Vec::new())
    }

    pub fn complete(n: u32) -> Self {
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push(Edge { u, v });
            }
        }
        Self::from_checked(n, edges)
    }

    pub fn path(n: u32) -> Self {
        let edges = (1..n).map(|u| Edge { u, v: u + 1 }).collect();
        Self::from_checked(n, edges)
    }

    /// The cycle `1-2-...-n-1`; requires `n >= 3`.
    pub fn cycle(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle needs n >= 3, got {n}"
            )));
        }
        let mut edges: Vec<Edge> = (1..n).map(|u| Edge { u, v: u + 1 }).collect();
        edges.push(Edge::new(n, 1));
        Ok(Self::from_checked(n, edges))
    }

    /// `K_{a,b}` with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: u32, b: u32) -> Self {
        let mut edges = Vec::new();
        for u in 1..=a {
            for v in a + 1..=a + b {
                edges.push(Edge { u, v });
            }
        }
        Self::from_checked(a + b, edges)
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// Neighbors of `v` paired with the index of the connecting edge.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adjacency[(v - 1) as usize]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.incident(v).iter().map(|&(x, _)| x)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[(v - 1) as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        if a == 0 || a > self.n {
            return None;
        }
        let list = self.incident(a);
        list.binary_search_by_key(&b, |&(x, _)| x)
            .ok()
            .map(|pos| list[pos].1)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// A 2-coloring `(X, Y)` by breadth-first search, or `None` if the graph
    /// has an odd cycle. Lower ids of each component land in `X`.
    pub fn bipartition(&self) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
        let mut side = vec![None::<bool>; self.n as usize];
        let mut queue = std::collections::VecDeque::new();
        for start in self.vertices() {
            if side[(start - 1) as usize].is_some() {
                continue;
            }
            side[(start - 1) as usize] = Some(false);
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                let sx = side[(x - 1) as usize].unwrap();
                for y in self.neighbors(x) {
                    match side[(y - 1) as usize] {
                        None => {
                            side[(y - 1) as usize] = Some(!sx);
                            queue.push_back(y);
                        }
                        Some(sy) if sy == sx => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        for v in self.vertices() {
            if side[(v - 1) as usize] == Some(false) {
                xs.push(v);
            } else {
                ys.push(v);
            }
        }
        Some((xs, ys))
    }

    /// Serializes to the edge-list text format accepted by [`load_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.u, e.v));
        }
        out
    }
}

/// Parses the edge-list format: one `u v` pair per line, `#` comments, and an
/// optional `n <count>` header that fixes the vertex count.
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, u32)> = None;
    let mut pairs: Vec<(usize, Vertex, Vertex)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(Error::parse(line_no, "header must be `n <count>`"));
            }
            if header.is_some() {
                return Err(Error::parse(line_no, "repeated `n` header"));
            }
            let count = parse_id(tokens[1], line_no, true)?;
            header = Some((line_no, count));
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::parse(
                line_no,
                format!("expected `u v`, found {:?}", line),
            ));
        }
        let a = parse_id(tokens[0], line_no, false)?;
        let b = parse_id(tokens[1], line_no, false)?;
        pairs.push((line_no, a, b));
    }

    let max_seen = pairs.iter().map(|&(_, a, b)| a.max(b)).max().unwrap_or(0);
    let n = match header {
        Some((line_no, count)) => {
            if count < max_seen {
                return Err(Error::parse(
                    line_no,
                    format!("header declares {count} vertices but id {max_seen} appears"),
                ));
            }
            count
        }
        None => max_seen,
    };

    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(pairs.len());
    for (line_no, a, b) in pairs {
        if a == b {
            return Err(Error::parse(line_no, format!("self-loop at vertex {a}")));
        }
        let e = Edge::new(a, b);
        if !seen.insert(e) {
            return Err(Error::parse(line_no, format!("duplicate edge {e}")));
        }
        edges.push(e);
    }
    Ok(Graph::from_checked(n, edges))
}

fn parse_id(token: &str, line: usize, allow_zero: bool) -> Result<u32> {
    let value: u32 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("not a non-negative integer: {token:?}")))?;
    if value == 0 && !allow_zero {
        return Err(Error::parse(line, "vertex ids are 1-based"));
    }
    Ok(value)
}

/// A family of subsets of the ground set `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: u32,
    sets: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    pub fn new(n: u32, sets: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(sets.len());
        for (i, set) in sets.into_iter().enumerate() {
            let members: BTreeSet<Vertex> = set.into_iter().collect();
            if let Some(&bad) = members.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::parse(
                    i + 1,
                    format!("element {bad} outside 1..={n}"),
                ));
            }
            normalized.push(members.into_iter().collect());
        }
        Ok(Hypergraph {
            n,
            sets: normalized,
        })
    }

    /// The dual hypergraph of `g`: ground set = edge indices (1-based), one
    /// member per vertex holding its incident edges.
    pub fn dual_of(g: &Graph) -> Self {
        let sets = g
            .vertices()
            .map(|v| {
                let mut s: Vec<Vertex> = g.incident(v).iter().map(|&(_, e)| e as u32 + 1).collect();
                s.sort_unstable();
                s
            })
            .collect();
        Hypergraph {
            n: g.edge_count() as u32,
            sets,
        }
    }

    pub fn ground_size(&self) -> u32 {
        self.n
    }

    pub fn sets(&self) -> &[Vec<Vertex>] {
        &self.sets
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.sets
            .iter()
            .filter(|s| s.binary_search(&v).is_ok())
            .count()
    }

    /// Maximum number of members containing one ground element.
    pub fn max_degree(&self) -> usize {
        let mut count = vec![0usize; self.n as usize];
        for s in &self.sets {
            for &x in s {
                count[(x - 1) as usize] += 1;
            }
        }
        count.into_iter().max().unwrap_or(0)
    }

    pub fn intersects(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.sets[i], &self.sets[j]);
        let (mut p, mut q) = (0, 0);
        while p < a.len() && q < b.len() {
            match a[p].cmp(&b[q]) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// Parses one member per line (space-separated ids), `#` comments and an
/// optional `n <count>` header. A line holding only `-` is an empty member.
pub fn load_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut header = None;
    let mut sets = Vec::new();
    let mut max_seen = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" && tokens.len() == 2 {
            header = Some(parse_id(tokens[1], line_no, true)?);
            continue;
        }
        if tokens == ["-"] {
            sets.push(Vec::new());
            continue;
        }
        let mut set = Vec::with_capacity(tokens.len());
        for t in tokens {
            let x = parse_id(t, line_no, false)?;
            max_seen = max_seen.max(x);
            set.push(x);
        }
        sets.push(set);
    }
    let n = match header {
        Some(count) if count < max_seen => {
            return Err(Error::parse(
                0,
                format!("header declares {count} elements but id {max_seen} appears"),
            ))
        }
        Some(count) => count,
        None => max_seen,
    };
    Hypergraph::new(n, sets)
}

/// One designated head per edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    heads: Vec<Vertex>,
}

impl Orientation {
    pub fn new(g: &Graph, heads: Vec<Vertex>) -> Result<Self> {
        if heads.len() != g.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "{} heads for {} edges",
                heads.len(),
                g.edge_count()
            )));
        }
        for (idx, &h) in heads.iter().enumerate() {
            if !g.edge(idx).contains(h) {
                return Err(Error::InvalidArgument(format!(
                    "head {h} is not an endpoint of edge {}",
                    g.edge(idx)
                )));
            }
        }
        Ok(Orientation { heads })
    }

    pub fn head(&self, edge_idx: usize) -> Vertex {
        self.heads[edge_idx]
    }

    pub fn heads(&self) -> &[Vertex] {
        &self.heads
    }

    /// `indegree[v - 1]` for every vertex of `g`.
    pub fn indegrees(&self, g: &Graph) -> Vec<usize> {
        let mut deg = vec![0; g.vertex_count() as usize];
        for &h in &self.heads {
            deg[(h - 1) as usize] += 1;
        }
        deg
    }

    pub fn max_indegree(&self, g: &Graph) -> usize {
        self.indegrees(g).into_iter().max().unwrap_or(0)
    }
}

/// Peels vertices of current degree `<= cap` (lowest id first) and orients
/// every edge still attached to a peeled vertex toward it.
pub fn degeneracy_orient(g: &Graph, cap: usize) -> Result<Orientation> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let n = g.vertex_count() as usize;
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut eligible: BTreeSet<Vertex> = g
        .vertices()
        .filter(|&v| degree[(v - 1) as usize] <= cap)
        .collect();
    let mut heads = vec![0; g.edge_count()];
    let mut peeled = 0;

    while let Some(v) = eligible.pop_first() {
        removed[(v - 1) as usize] = true;
        peeled += 1;
        for &(x, e) in g.incident(v) {
            let xi = (x - 1) as usize;
            if removed[xi] {
                continue;
            }
            heads[e] = v;
            degree[xi] -= 1;
            if degree[xi] == cap {
                eligible.insert(x);
            }
        }
    }

    if peeled < n {
        return Err(Error::NotDegenerate {
            cap,
            remaining: n - peeled,
        });
    }
    Ok(Orientation { heads })
}
