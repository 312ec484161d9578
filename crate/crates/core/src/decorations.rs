//! Cool decorations of graphs and hypergraphs.
//!
//! A decoration assigns real numbers to vertices and/or edges; each vertex
//! then gets a derived value `S(v)` (or `M(v)` for ironic decorations) and the
//! decoration is *cool* when adjacent vertices never share that value.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Hypergraph, Vertex};
use crate::search::{DistinctSums, LinearForm, SearchOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecorationKind {
    /// `S(v)` = sum of incident edge values.
    Edge,
    /// `S(v)` = sum of neighbor values.
    Vertex,
    /// `S(v)` = own value plus incident edge values.
    Total,
    /// `M(v)` = own value times degree.
    Ironic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decoration {
    kind: DecorationKind,
    vertex_values: Option<BTreeMap<Vertex, f64>>,
    edge_values: Option<BTreeMap<Edge, f64>>,
}

impl Decoration {
    pub fn new(
        kind: DecorationKind,
        vertex_values: Option<BTreeMap<Vertex, f64>>,
        edge_values: Option<BTreeMap<Edge, f64>>,
    ) -> Result<Self> {
        let (want_vertices, want_edges) = match kind {
            DecorationKind::Edge => (false, true),
            DecorationKind::Vertex | DecorationKind::Ironic => (true, false),
            DecorationKind::Total => (true, true),
        };
        if vertex_values.is_some() != want_vertices || edge_values.is_some() != want_edges {
            return Err(Error::InvalidDecoration(format!(
                "{kind:?} decoration needs vertex values: {want_vertices}, edge values: {want_edges}"
            )));
        }
        Ok(Decoration {
            kind,
            vertex_values,
            edge_values,
        })
    }

    /// Edge decoration from values listed in the graph's edge order.
    pub fn edge_from_slice(g: &Graph, values: &[f64]) -> Self {
        Decoration {
            kind: DecorationKind::Edge,
            vertex_values: None,
            edge_values: Some(
                g.edges()
                    .iter()
                    .copied()
                    .zip(values.iter().copied())
                    .collect(),
            ),
        }
    }

    /// Vertex-valued decoration (`Vertex` or `Ironic`) from values for `1..=n`.
    pub fn vertex_from_slice(kind: DecorationKind, values: &[f64]) -> Result<Self> {
        let map = values
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as Vertex + 1, x))
            .collect();
        Decoration::new(kind, Some(map), None)
    }

    pub fn total_from_slices(g: &Graph, vertex_values: &[f64], edge_values: &[f64]) -> Self {
        Decoration {
            kind: DecorationKind::Total,
            vertex_values: Some(
                vertex_values
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| (i as Vertex + 1, x))
                    .collect(),
            ),
            edge_values: Some(
                g.edges()
                    .iter()
                    .copied()
                    .zip(edge_values.iter().copied())
                    .collect(),
            ),
        }
    }

    pub fn kind(&self) -> DecorationKind {
        self.kind
    }

    pub fn vertex_value(&self, v: Vertex) -> Option<f64> {
        self.vertex_values.as_ref()?.get(&v).copied()
    }

    pub fn edge_value(&self, e: Edge) -> Option<f64> {
        self.edge_values.as_ref()?.get(&e).copied()
    }

    pub fn vertex_values(&self) -> Option<&BTreeMap<Vertex, f64>> {
        self.vertex_values.as_ref()
    }

    pub fn edge_values(&self) -> Option<&BTreeMap<Edge, f64>> {
        self.edge_values.as_ref()
    }

    fn check_against(&self, g: &Graph) -> Result<()> {
        let mut missing_vertices = Vec::new();
        let mut missing_edges = Vec::new();
        if let Some(map) = &self.vertex_values {
            if let Some(&v) = map.keys().find(|&&v| v == 0 || v > g.vertex_count()) {
                return Err(Error::InvalidDecoration(format!(
                    "vertex {v} is not in the graph"
                )));
            }
            missing_vertices.extend(g.vertices().filter(|v| !map.contains_key(v)));
        }
        if let Some(map) = &self.edge_values {
            if let Some(e) = map.keys().find(|e| !g.has_edge(e.u, e.v)) {
                return Err(Error::InvalidDecoration(format!(
                    "edge {e} is not in the graph"
                )));
            }
            missing_edges.extend(
                g.edges()
                    .iter()
                    .filter(|e| !map.contains_key(e))
                    .map(|e| (e.u, e.v)),
            );
        }
        if missing_vertices.is_empty() && missing_edges.is_empty() {
            Ok(())
        } else {
            Err(Error::IncompleteDecoration {
                missing_vertices,
                missing_edges,
            })
        }
    }
}

impl Serialize for Decoration {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct VertexEntry {
            vertex: Vertex,
            value: f64,
        }
        #[derive(Serialize)]
        struct EdgeEntry {
            u: Vertex,
            v: Vertex,
            value: f64,
        }
        let mut s = serializer.serialize_struct("Decoration", 3)?;
        s.serialize_field("kind", &self.kind)?;
        let vertices: Option<Vec<VertexEntry>> = self.vertex_values.as_ref().map(|m| {
            m.iter()
                .map(|(&vertex, &value)| VertexEntry { vertex, value })
                .collect()
        });
        let edges: Option<Vec<EdgeEntry>> = self.edge_values.as_ref().map(|m| {
            m.iter()
                .map(|(e, &value)| EdgeEntry {
                    u: e.u,
                    v: e.v,
                    value,
                })
                .collect()
        });
        s.serialize_field("vertices", &vertices)?;
        s.serialize_field("edges", &edges)?;
        s.end()
    }
}

/// Derived per-vertex values `S(v)` (or `M(v)`), indexed by `v - 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct VertexSums(Vec<f64>);

impl VertexSums {
    pub fn get(&self, v: Vertex) -> f64 {
        self.0[(v - 1) as usize]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Summation order matches the search forms built below, so a witness from a
/// brute-force search always re-verifies bit-for-bit.
pub fn vertex_sums(g: &Graph, d: &Decoration) -> Result<VertexSums> {
    d.check_against(g)?;
    let sums = g
        .vertices()
        .map(|v| match d.kind {
            DecorationKind::Edge => g
                .incident(v)
                .iter()
                .map(|&(_, e)| d.edge_values.as_ref().unwrap()[&g.edge(e)])
                .sum(),
            DecorationKind::Vertex => g
                .neighbors(v)
                .map(|x| d.vertex_values.as_ref().unwrap()[&x])
                .sum(),
            DecorationKind::Total => {
                let own = d.vertex_values.as_ref().unwrap()[&v];
                std::iter::once(own)
                    .chain(
                        g.incident(v)
                            .iter()
                            .map(|&(_, e)| d.edge_values.as_ref().unwrap()[&g.edge(e)]),
                    )
                    .sum()
            }
            DecorationKind::Ironic => d.vertex_values.as_ref().unwrap()[&v] * g.degree(v) as f64,
        })
        .collect();
    Ok(VertexSums(sums))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoolReport {
    pub cool: bool,
    pub violations: Vec<Edge>,
    pub sums: VertexSums,
}

/// Checks every edge for equal derived values.
pub fn verify_cool(g: &Graph, d: &Decoration) -> Result<CoolReport> {
    let sums = vertex_sums(g, d)?;
    let violations: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| sums.get(e.u) == sums.get(e.v))
        .collect();
    Ok(CoolReport {
        cool: violations.is_empty(),
        violations,
        sums,
    })
}

/// Greedy chip-moving total decoration: vertices get values in `{1, 2}`,
/// edges in `{1, 2, 3}`, and the result is always cool.
///
/// `order` defaults to ascending ids and must otherwise be a permutation of
/// the vertices.
pub fn kalkowski_total(g: &Graph, order: Option<&[Vertex]>) -> Result<Decoration> {
    kalkowski_total_observed(g, order, |_, _, _| {})
}

/// As [`kalkowski_total`], calling `on_step(v, vertex_values, edge_values)`
/// after each processed vertex. Slices are indexed by `v - 1` and edge index.
pub fn kalkowski_total_observed(
    g: &Graph,
    order: Option<&[Vertex]>,
    mut on_step: impl FnMut(Vertex, &[i64], &[i64]),
) -> Result<Decoration> {
    let n = g.vertex_count() as usize;
    let order: Vec<Vertex> = match order {
        Some(o) => {
            let distinct: BTreeSet<Vertex> = o.iter().copied().collect();
            if o.len() != n
                || distinct.len() != n
                || distinct.iter().any(|&v| v == 0 || v as usize > n)
            {
                return Err(Error::InvalidArgument(
                    "vertex order must be a permutation of 1..=n".into(),
                ));
            }
            o.to_vec()
        }
        None => g.vertices().collect(),
    };
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[(v - 1) as usize] = i;
    }

    let mut fv = vec![1i64; n];
    let mut fe = vec![2i64; g.edge_count()];
    let sum_at = |v: Vertex, fv: &[i64], fe: &[i64]| -> i64 {
        fv[(v - 1) as usize] + g.incident(v).iter().map(|&(_, e)| fe[e]).sum::<i64>()
    };

    for &v in &order {
        if g.degree(v) == 0 {
            on_step(v, &fv, &fe);
            continue;
        }
        let me = position[(v - 1) as usize];
        let mut backward: Vec<(usize, Vertex)> = g
            .incident(v)
            .iter()
            .filter(|&&(x, _)| position[(x - 1) as usize] < me)
            .map(|&(x, e)| (e, x))
            .collect();
        backward.sort_unstable();

        let base = sum_at(v, &fv, &fe);
        let forbidden: BTreeSet<i64> = backward.iter().map(|&(_, x)| sum_at(x, &fv, &fe)).collect();
        // chip from edge to neighbor lowers S(v); chip from neighbor to edge raises it
        let lowering: Vec<(usize, Vertex)> = backward
            .iter()
            .copied()
            .filter(|&(_, x)| fv[(x - 1) as usize] == 1)
            .collect();
        let raising: Vec<(usize, Vertex)> = backward
            .iter()
            .copied()
            .filter(|&(_, x)| fv[(x - 1) as usize] == 2)
            .collect();

        let lo = -(lowering.len() as i64);
        let hi = raising.len() as i64;
        let offset = (0..=lo.abs().max(hi))
            .flat_map(|m| if m == 0 { vec![0] } else { vec![-m, m] })
            .filter(|o| (lo..=hi).contains(o))
            .find(|o| !forbidden.contains(&(base + o)))
            .ok_or_else(|| Error::Inconsistent(format!("no free sum at vertex {v}")))?;

        if offset < 0 {
            for &(e, x) in lowering.iter().take((-offset) as usize) {
                fe[e] -= 1;
                fv[(x - 1) as usize] += 1;
            }
        } else {
            for &(e, x) in raising.iter().take(offset as usize) {
                fe[e] += 1;
                fv[(x - 1) as usize] -= 1;
            }
        }
        on_step(v, &fv, &fe);
    }

    let vertex_values: Vec<f64> = fv.iter().map(|&x| x as f64).collect();
    let edge_values: Vec<f64> = fe.iter().map(|&x| x as f64).collect();
    Ok(Decoration::total_from_slices(
        g,
        &vertex_values,
        &edge_values,
    ))
}

fn edge_sum_form(g: &Graph, v: Vertex) -> LinearForm {
    g.incident(v).iter().map(|&(_, e)| (e, 1.0)).collect()
}

fn neighbor_sum_form(g: &Graph, v: Vertex) -> LinearForm {
    g.neighbors(v).map(|x| ((x - 1) as usize, 1.0)).collect()
}

fn edge_constraints(
    g: &Graph,
    form: impl Fn(Vertex) -> LinearForm,
) -> Vec<(LinearForm, LinearForm)> {
    g.edges().iter().map(|e| (form(e.u), form(e.v))).collect()
}

fn check_values(values: &[f64], what: &str) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!("{what} must be non-empty")));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what} must be finite")));
    }
    Ok(())
}

/// Exhaustive search for a cool edge decoration with every edge value in
/// `values` (tried in the given order).
pub fn brute_force_edge(
    g: &Graph,
    values: &[f64],
    budget: u128,
) -> Result<SearchOutcome<Decoration>> {
    check_values(values, "value set")?;
    brute_force_edge_lists(g, &vec![values.to_vec(); g.edge_count()], budget)
}

/// Exhaustive search for a cool edge decoration from per-edge lists (in the
/// graph's edge order).
pub fn brute_force_edge_lists(
    g: &Graph,
    lists: &[Vec<f64>],
    budget: u128,
) -> Result<SearchOutcome<Decoration>> {
    if lists.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "{} lists for {} edges",
            lists.len(),
            g.edge_count()
        )));
    }
    for l in lists {
        check_values(l, "edge list")?;
    }
    let problem = DistinctSums {
        domains: lists.to_vec(),
        constraints: edge_constraints(g, |v| edge_sum_form(g, v)),
    };
    Ok(problem.solve(budget).map(|choice| {
        let chosen: Vec<f64> = choice.iter().zip(lists).map(|(&i, l)| l[i]).collect();
        Decoration::edge_from_slice(g, &chosen)
    }))
}

/// Exhaustive search for a cool vertex decoration from per-vertex lists.
pub fn brute_force_vertex(
    g: &Graph,
    lists: &[Vec<f64>],
    budget: u128,
) -> Result<SearchOutcome<Decoration>> {
    if lists.len() != g.vertex_count() as usize {
        return Err(Error::InvalidArgument(format!(
            "{} lists for {} vertices",
            lists.len(),
            g.vertex_count()
        )));
    }
    for l in lists {
        check_values(l, "vertex list")?;
    }
    let problem = DistinctSums {
        domains: lists.to_vec(),
        constraints: edge_constraints(g, |v| neighbor_sum_form(g, v)),
    };
    solve_vertex_valued(&problem, lists, DecorationKind::Vertex, budget)
}

fn solve_vertex_valued(
    problem: &DistinctSums,
    lists: &[Vec<f64>],
    kind: DecorationKind,
    budget: u128,
) -> Result<SearchOutcome<Decoration>> {
    match problem.solve(budget) {
        SearchOutcome::Found { witness } => {
            let chosen: Vec<f64> = witness.iter().zip(lists).map(|(&i, l)| l[i]).collect();
            Ok(SearchOutcome::Found {
                witness: Decoration::vertex_from_slice(kind, &chosen)?,
            })
        }
        SearchOutcome::NoneFound => Ok(SearchOutcome::NoneFound),
        SearchOutcome::Refused { grid, budget } => Ok(SearchOutcome::Refused { grid, budget }),
    }
}

/// Exhaustive search for a total cool decoration; vertices draw from
/// `vertex_values`, edges from `edge_values`.
pub fn brute_force_total(
    g: &Graph,
    vertex_values: &[f64],
    edge_values: &[f64],
    budget: u128,
) -> Result<SearchOutcome<Decoration>> {
    check_values(vertex_values, "vertex value set")?;
    check_values(edge_values, "edge value set")?;
    let n = g.vertex_count() as usize;
    let mut domains = vec![vertex_values.to_vec(); n];
    domains.extend(std::iter::repeat_n(edge_values.to_vec(), g.edge_count()));
    let form = |v: Vertex| {
        let mut f: LinearForm = vec![((v - 1) as usize, 1.0)];
        f.extend(g.incident(v).iter().map(|&(_, e)| (n + e, 1.0)));
        f
    };
    let problem = DistinctSums {
        domains,
        constraints: edge_constraints(g, form),
    };
    Ok(problem.solve(budget).map(|choice| {
        let fv: Vec<f64> = choice[..n].iter().map(|&i| vertex_values[i]).collect();
        let fe: Vec<f64> = choice[n..].iter().map(|&i| edge_values[i]).collect();
        Decoration::total_from_slices(g, &fv, &fe)
    }))
}

/// Exhaustive search for `f: V -> {1..k}` with `f(u)d_u != f(v)d_v` on edges.
pub fn brute_force_ironic(g: &Graph, k: u32, budget: u128) -> Result<SearchOutcome<Decoration>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let palette: Vec<f64> = (1..=k).map(f64::from).collect();
    let lists = vec![palette; g.vertex_count() as usize];
    let form = |v: Vertex| vec![((v - 1) as usize, g.degree(v) as f64)];
    let problem = DistinctSums {
        domains: lists.clone(),
        constraints: edge_constraints(g, form),
    };
    solve_vertex_valued(&problem, &lists, DecorationKind::Ironic, budget)
}

/// A proper coloring drawn from cascade lists, with the ironic decoration
/// obtained by dividing each color by its vertex degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CascadeListColoring {
    /// `colors[v - 1]`
    pub colors: Vec<u64>,
    pub ironic: Decoration,
}

/// Proper coloring with `color(v)` in `{d, 2d, ..., k*d}`, `d = deg(v)`.
/// Isolated vertices use `d = 1`.
pub fn brute_force_cascade_lists(
    g: &Graph,
    k: u32,
    budget: u128,
) -> Result<SearchOutcome<CascadeListColoring>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let root = |v: Vertex| g.degree(v).max(1) as u64;
    let domains: Vec<Vec<f64>> = g
        .vertices()
        .map(|v| (1..=k as u64).map(|j| (j * root(v)) as f64).collect())
        .collect();
    let problem = DistinctSums {
        domains,
        constraints: edge_constraints(g, |v| vec![((v - 1) as usize, 1.0)]),
    };
    match problem.solve(budget) {
        SearchOutcome::Found { witness } => {
            let multipliers: Vec<f64> = witness.iter().map(|&i| (i + 1) as f64).collect();
            let colors = g
                .vertices()
                .zip(&witness)
                .map(|(v, &i)| (i as u64 + 1) * root(v))
                .collect();
            Ok(SearchOutcome::Found {
                witness: CascadeListColoring {
                    colors,
                    ironic: Decoration::vertex_from_slice(DecorationKind::Ironic, &multipliers)?,
                },
            })
        }
        SearchOutcome::NoneFound => Ok(SearchOutcome::NoneFound),
        SearchOutcome::Refused { grid, budget } => Ok(SearchOutcome::Refused { grid, budget }),
    }
}

/// Sums `S(A)` of every member under `f` (`f[x - 1]`).
pub fn hypergraph_sums(h: &Hypergraph, f: &[u32]) -> Vec<u64> {
    h.sets()
        .iter()
        .map(|s| s.iter().map(|&x| f[(x - 1) as usize] as u64).sum())
        .collect()
}

/// True iff intersecting members always have different sums.
pub fn verify_hypergraph_cool(h: &Hypergraph, f: &[u32]) -> bool {
    let sums = hypergraph_sums(h, f);
    let m = h.sets().len();
    (0..m).all(|i| (i + 1..m).all(|j| !h.intersects(i, j) || sums[i] != sums[j]))
}

/// Exhaustive search for `f: V -> {1..c}` making the hypergraph cool.
pub fn brute_force_hypergraph(
    h: &Hypergraph,
    c: u32,
    budget: u128,
) -> Result<SearchOutcome<Vec<u32>>> {
    if c == 0 {
        return Err(Error::InvalidArgument("C must be at least 1".into()));
    }
    let palette: Vec<f64> = (1..=c).map(f64::from).collect();
    let form = |i: usize| -> LinearForm {
        h.sets()[i]
            .iter()
            .map(|&x| ((x - 1) as usize, 1.0))
            .collect()
    };
    let m = h.sets().len();
    let mut constraints = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if h.intersects(i, j) {
                constraints.push((form(i), form(j)));
            }
        }
    }
    let problem = DistinctSums {
        domains: vec![palette; h.ground_size() as usize],
        constraints,
    };
    Ok(problem
        .solve(budget)
        .map(|choice| choice.into_iter().map(|i| i as u32 + 1).collect()))
}
