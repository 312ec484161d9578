//! Graph polynomials `prod (S(u) - S(v))` and their non-vanishing monomials.
//!
//! A top-degree monomial `x_1^k_1 ... x_m^k_m` with nonzero coefficient
//! guarantees that any lists of sizes `k_i + 1` contain a point where the
//! polynomial does not vanish, i.e. a cool decoration from those lists.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::decorations::{brute_force_edge_lists, brute_force_vertex, Decoration};
use crate::error::{Error, Result};
use crate::graph::{degeneracy_orient, Graph, Vertex};
use crate::poly::{total_degree, Exponents, SparsePolynomial};
use crate::search::SearchOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionBudget {
    /// Maximum number of linear factors (edges).
    pub max_factors: usize,
    /// Maximum number of live monomials at any point of the expansion.
    pub max_terms: usize,
}

impl Default for ExpansionBudget {
    fn default() -> Self {
        ExpansionBudget {
            max_factors: 12,
            max_terms: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Coefficient {
    Exact(i64),
    /// Only the sign is known (the exact count was too expensive).
    Sign(i8),
}

impl Coefficient {
    pub fn is_nonzero(&self) -> bool {
        match *self {
            Coefficient::Exact(c) => c != 0,
            Coefficient::Sign(s) => s != 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    exponents: Exponents,
    coefficient: Coefficient,
}

impl Certificate {
    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    pub fn coefficient(&self) -> Coefficient {
        self.coefficient
    }

    /// Minimum list size per variable: `k_i + 1`.
    pub fn list_sizes(&self) -> Vec<usize> {
        self.exponents.iter().map(|&k| k as usize + 1).collect()
    }

    pub fn degree(&self) -> u32 {
        total_degree(&self.exponents)
    }
}

/// The linear factor `S(u) - S(v)` for edge `uv` over edge variables.
fn edge_factor(g: &Graph, edge_idx: usize) -> Vec<(usize, i64)> {
    let e = g.edge(edge_idx);
    let mut f: Vec<(usize, i64)> = g.incident(e.u).iter().map(|&(_, x)| (x, 1)).collect();
    f.extend(g.incident(e.v).iter().map(|&(_, x)| (x, -1)));
    f
}

fn expand(
    vars: usize,
    factors: impl Iterator<Item = Vec<(usize, i64)>>,
    caps: Option<&[u8]>,
    budget: ExpansionBudget,
) -> Result<SparsePolynomial> {
    let mut p = SparsePolynomial::one(vars);
    for factor in factors {
        p = p.mul_linear(&factor, caps, budget.max_terms)?;
        if p.is_zero() {
            break;
        }
    }
    Ok(p)
}

fn check_factor_budget(m: usize, budget: ExpansionBudget) -> Result<()> {
    if m > budget.max_factors {
        return Err(Error::BudgetExceeded {
            required: m as u128,
            budget: budget.max_factors as u128,
        });
    }
    Ok(())
}

/// Expands `prod_{uv} (S(u) - S(v))` with one variable per edge (in the
/// graph's edge order); `S(v)` sums the variables of edges at `v`.
pub fn build_edge_polynomial(g: &Graph, budget: ExpansionBudget) -> Result<SparsePolynomial> {
    build_edge_polynomial_capped(g, None, budget)
}

/// As [`build_edge_polynomial`], keeping only monomials within `caps`.
pub fn build_edge_polynomial_capped(
    g: &Graph,
    caps: Option<&[u8]>,
    budget: ExpansionBudget,
) -> Result<SparsePolynomial> {
    let m = g.edge_count();
    check_factor_budget(m, budget)?;
    check_caps(caps, m)?;
    expand(m, (0..m).map(|i| edge_factor(g, i)), caps, budget)
}

fn check_caps(caps: Option<&[u8]>, vars: usize) -> Result<()> {
    match caps {
        Some(c) if c.len() != vars => Err(Error::InvalidArgument(format!(
            "{} caps for {vars} variables",
            c.len()
        ))),
        _ => Ok(()),
    }
}

/// Validated bipartition: `true` marks the `X` side, indexed by `v - 1`.
fn side_map(g: &Graph, xs: &[Vertex], ys: &[Vertex]) -> Result<Vec<bool>> {
    let n = g.vertex_count() as usize;
    let mut side: Vec<Option<bool>> = vec![None; n];
    for (&v, is_x) in xs
        .iter()
        .map(|v| (v, true))
        .chain(ys.iter().map(|v| (v, false)))
    {
        if v == 0 || v as usize > n {
            return Err(Error::NotBipartition(format!(
                "vertex {v} is not in the graph"
            )));
        }
        if side[(v - 1) as usize].replace(is_x).is_some() {
            return Err(Error::NotBipartition(format!("vertex {v} listed twice")));
        }
    }
    let side: Vec<bool> = side
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| Error::NotBipartition(format!("vertex {} is unassigned", i + 1)))
        })
        .collect::<Result<_>>()?;
    if let Some(e) = g
        .edges()
        .iter()
        .find(|e| side[(e.u - 1) as usize] == side[(e.v - 1) as usize])
    {
        return Err(Error::NotBipartition(format!(
            "edge {e} lies inside one part"
        )));
    }
    Ok(side)
}

/// `(x_side_endpoint, y_side_endpoint)` for every edge.
fn oriented_edges(g: &Graph, side: &[bool]) -> Vec<(Vertex, Vertex)> {
    g.edges()
        .iter()
        .map(|e| {
            if side[(e.u - 1) as usize] {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            }
        })
        .collect()
}

/// Factor `S(u) - S(v)` (u in X, v in Y) over vertex variables: neighbors of
/// `u` are `Y` variables with `+`, neighbors of `v` are `X` variables with `-`.
fn vertex_factor(g: &Graph, u: Vertex, v: Vertex) -> Vec<(usize, i64)> {
    let mut f: Vec<(usize, i64)> = g.neighbors(u).map(|w| ((w - 1) as usize, 1)).collect();
    f.extend(g.neighbors(v).map(|w| ((w - 1) as usize, -1)));
    f
}

/// Expands `prod (S(u) - S(v))` over edges `uv`, `u` in `xs`, `v` in `ys`,
/// with one variable per vertex (variable `i` belongs to vertex `i + 1`).
pub fn build_bipartite_vertex_polynomial(
    g: &Graph,
    xs: &[Vertex],
    ys: &[Vertex],
    budget: ExpansionBudget,
) -> Result<SparsePolynomial> {
    let side = side_map(g, xs, ys)?;
    check_factor_budget(g.edge_count(), budget)?;
    let edges = oriented_edges(g, &side);
    expand(
        g.vertex_count() as usize,
        edges.iter().map(|&(u, v)| vertex_factor(g, u, v)),
        None,
        budget,
    )
}

/// Lexicographically smallest top-degree monomial with exponents within
/// `caps`.
pub fn find_certificate(p: &SparsePolynomial, caps: &[u8]) -> Result<Option<Certificate>> {
    check_caps(Some(caps), p.var_count())?;
    let Some(top) = p.degree() else {
        return Ok(None);
    };
    Ok(p.terms()
        .find(|(e, _)| total_degree(e) == top && e.iter().zip(caps).all(|(k, c)| k <= c))
        .map(|(e, c)| Certificate {
            exponents: e.clone(),
            coefficient: Coefficient::Exact(c),
        }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListMode {
    Edge,
    BipartiteVertex { xs: Vec<Vertex>, ys: Vec<Vertex> },
}

/// Finds a cool decoration from `lists` whose sizes satisfy `certificate`.
/// Only the first `k_i + 1` entries of each list are searched; the
/// certificate guarantees a solution inside that sub-grid.
pub fn decorate_from_lists(
    g: &Graph,
    mode: &ListMode,
    lists: &[Vec<f64>],
    certificate: &Certificate,
    grid_budget: u128,
) -> Result<SearchOutcome<Decoration>> {
    let vars = match mode {
        ListMode::Edge => g.edge_count(),
        ListMode::BipartiteVertex { xs, ys } => {
            side_map(g, xs, ys)?;
            g.vertex_count() as usize
        }
    };
    if lists.len() != vars || certificate.exponents.len() != vars {
        return Err(Error::InvalidArgument(format!(
            "{vars} variables, {} lists, certificate over {} variables",
            lists.len(),
            certificate.exponents.len()
        )));
    }
    let mut trimmed = Vec::with_capacity(vars);
    for (i, (list, need)) in lists.iter().zip(certificate.list_sizes()).enumerate() {
        let distinct: BTreeSet<u64> = list.iter().map(|x| x.to_bits()).collect();
        if distinct.len() != list.len() {
            return Err(Error::InvalidArgument(format!(
                "list {} repeats a value",
                i + 1
            )));
        }
        if list.len() < need {
            return Err(Error::InvalidArgument(format!(
                "list {} has {} values, certificate needs {need}",
                i + 1,
                list.len()
            )));
        }
        trimmed.push(list[..need].to_vec());
    }
    let outcome = match mode {
        ListMode::Edge => brute_force_edge_lists(g, &trimmed, grid_budget)?,
        ListMode::BipartiteVertex { .. } => brute_force_vertex(g, &trimmed, grid_budget)?,
    };
    if outcome.is_none_found() {
        return Err(Error::Inconsistent(
            "certificate promised a non-vanishing point but the grid has none".into(),
        ));
    }
    Ok(outcome)
}

/// Certificate for the bipartite vertex polynomial read off a 2-degenerate
/// orientation: each factor contributes the variable of its edge's head.
///
/// All `X` variables enter with a minus sign, so monomials sharing an
/// exponent vector never cancel and the coefficient is
/// `(-1)^(X-degree) * (number of factor choices producing it)`.
pub fn orientation_certificate(g: &Graph, xs: &[Vertex], ys: &[Vertex]) -> Result<Certificate> {
    let side = side_map(g, xs, ys)?;
    let orientation = degeneracy_orient(g, 2)?;
    let mut exponents = vec![0u8; g.vertex_count() as usize];
    for &h in orientation.heads() {
        exponents[(h - 1) as usize] += 1;
    }
    let x_degree: u32 = exponents
        .iter()
        .zip(&side)
        .filter(|(_, &is_x)| is_x)
        .map(|(&k, _)| k as u32)
        .sum();
    let sign: i8 = if x_degree.is_multiple_of(2) { 1 } else { -1 };
    let factors: Vec<Vec<usize>> = oriented_edges(g, &side)
        .iter()
        .map(|&(u, v)| vertex_factor(g, u, v).into_iter().map(|(w, _)| w).collect())
        .collect();
    let coefficient = match count_choices(&factors, &exponents, 1 << 20) {
        Some(count) => i64::try_from(count)
            .map(|c| Coefficient::Exact(sign as i64 * c))
            .unwrap_or(Coefficient::Sign(sign)),
        None => Coefficient::Sign(sign),
    };
    Ok(Certificate {
        exponents,
        coefficient,
    })
}

/// Number of ways to pick one variable per factor so the picks multiply to
/// `target`. `None` if the memo would exceed `memo_limit` states.
fn count_choices(factors: &[Vec<usize>], target: &[u8], memo_limit: usize) -> Option<u128> {
    fn go(
        factors: &[Vec<usize>],
        idx: usize,
        remaining: &mut Vec<u8>,
        memo: &mut HashMap<(usize, Vec<u8>), u128>,
        limit: usize,
    ) -> Option<u128> {
        if idx == factors.len() {
            return Some(u128::from(remaining.iter().all(|&k| k == 0)));
        }
        if let Some(&hit) = memo.get(&(idx, remaining.clone())) {
            return Some(hit);
        }
        let mut total = 0u128;
        for &w in &factors[idx] {
            if remaining[w] == 0 {
                continue;
            }
            remaining[w] -= 1;
            let sub = go(factors, idx + 1, remaining, memo, limit);
            remaining[w] += 1;
            total += sub?;
        }
        if memo.len() >= limit {
            return None;
        }
        memo.insert((idx, remaining.clone()), total);
        Some(total)
    }
    let mut memo = HashMap::new();
    go(factors, 0, &mut target.to_vec(), &mut memo, memo_limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: ExpansionBudget = ExpansionBudget {
        max_factors: 12,
        max_terms: 4_000_000,
    };

    #[test]
    fn k2_edge_polynomial_vanishes() {
        let p = build_edge_polynomial(&Graph::complete(2), BUDGET).unwrap();
        assert!(p.is_zero());
        assert_eq!(find_certificate(&p, &[5]).unwrap(), None);
    }

    #[test]
    fn p3_edge_polynomial_is_minus_x1_x2() {
        let p = build_edge_polynomial(&Graph::path(3), BUDGET).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coefficient(&[1, 1]), -1);
        let c = find_certificate(&p, &[2, 2]).unwrap().unwrap();
        assert_eq!(c.exponents(), &[1, 1]);
        assert_eq!(c.coefficient(), Coefficient::Exact(-1));
        assert_eq!(c.list_sizes(), vec![2, 2]);
        assert_eq!(find_certificate(&p, &[0, 2]).unwrap(), None);
    }

    #[test]
    fn k3_edge_polynomial_is_uniform_cubic() {
        let p = build_edge_polynomial(&Graph::complete(3), BUDGET).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert!(p.is_uniform());
        assert!(find_certificate(&p, &[2, 2, 2]).unwrap().is_some());
    }

    #[test]
    fn factor_budget_refuses() {
        let g = Graph::complete(6);
        assert_eq!(
            build_edge_polynomial(&g, BUDGET).unwrap_err(),
            Error::BudgetExceeded {
                required: 15,
                budget: 12
            }
        );
    }

    #[test]
    fn k2_bipartite_polynomial() {
        let p = build_bipartite_vertex_polynomial(&Graph::complete(2), &[1], &[2], BUDGET).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coefficient(&[1, 0]), -1);
        assert_eq!(p.coefficient(&[0, 1]), 1);
    }

    #[test]
    fn empty_graph_polynomial_is_one() {
        let p = build_bipartite_vertex_polynomial(&Graph::empty(2), &[1], &[2], BUDGET).unwrap();
        assert_eq!(p, SparsePolynomial::one(2));
    }

    #[test]
    fn rejects_bad_bipartitions() {
        let g = Graph::path(3);
        for (xs, ys) in [
            (vec![1, 2], vec![3]),
            (vec![1], vec![2]),
            (vec![1, 3], vec![2, 3]),
        ] {
            assert!(matches!(
                build_bipartite_vertex_polynomial(&g, &xs, &ys, BUDGET),
                Err(Error::NotBipartition(_))
            ));
        }
    }

    #[test]
    fn single_edge_orientation_certificate() {
        let g = Graph::complete(2);
        let c = orientation_certificate(&g, &[1], &[2]).unwrap();
        // vertex 1 is peeled first and becomes the head
        assert_eq!(c.exponents(), &[1, 0]);
        assert_eq!(c.coefficient(), Coefficient::Exact(-1));
    }

    #[test]
    fn decorates_p3_from_two_lists() {
        let g = Graph::path(3);
        let p = build_edge_polynomial(&g, BUDGET).unwrap();
        let c = find_certificate(&p, &[1, 1]).unwrap().unwrap();
        let d = decorate_from_lists(
            &g,
            &ListMode::Edge,
            &[vec![1.0, 2.0], vec![1.0, 2.0]],
            &c,
            1000,
        )
        .unwrap()
        .found()
        .unwrap();
        assert!(crate::decorations::verify_cool(&g, &d).unwrap().cool);
    }

    #[test]
    fn short_lists_are_rejected() {
        let g = Graph::path(3);
        let p = build_edge_polynomial(&g, BUDGET).unwrap();
        let c = find_certificate(&p, &[1, 1]).unwrap().unwrap();
        assert!(
            decorate_from_lists(&g, &ListMode::Edge, &[vec![1.0], vec![1.0, 2.0]], &c, 1000)
                .is_err()
        );
        assert!(decorate_from_lists(
            &g,
            &ListMode::Edge,
            &[vec![1.0, 1.0], vec![1.0, 2.0]],
            &c,
            1000
        )
        .is_err());
    }
}
