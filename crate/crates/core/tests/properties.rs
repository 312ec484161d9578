use std::collections::BTreeMap;

use cascadelab::cascades::{build_window, clique_probe, rainbow_color};
use cascadelab::decorations::{
    brute_force_edge, brute_force_hypergraph, kalkowski_total, kalkowski_total_observed,
    verify_cool,
};
use cascadelab::graph::{degeneracy_orient, load_graph};
use cascadelab::multiplicative::{build_coloring, cascade_balance, SignRule};
use cascadelab::nullstellensatz::{
    build_bipartite_vertex_polynomial, build_edge_polynomial, decorate_from_lists, find_certificate,
};
use cascadelab::rejmer::rejmer_run;
use cascadelab::seeds::{construct_seed, enumerate_seeds, Construction, DEFAULT_PRIME_BUDGET};
use cascadelab::sieve::{liouville_segment, liouville_table, primes_up_to, SpfTable};
use cascadelab::{
    Error, ExpansionBudget, Graph, Hypergraph, ListMode, Vertex, DEFAULT_GRID_BUDGET,
};
use proptest::prelude::*;

/// Simple graphs on `1..=max_n` vertices from an edge mask.
fn graphs(max_n: u32, max_edges: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let pairs: Vec<(u32, u32)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let chosen: Vec<(u32, u32)> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&p, _)| p)
                .take(max_edges)
                .collect();
            Graph::new(n, chosen).unwrap()
        })
    })
}

fn sums_of(g: &Graph, edge_values: &[i64]) -> Vec<i64> {
    g.vertices()
        .map(|v| g.incident(v).iter().map(|&(_, e)| edge_values[e]).sum())
        .collect()
}

/// Independent odometer over all edge assignments from `values`.
fn enumerate_edge_cool(g: &Graph, values: &[i64]) -> bool {
    let m = g.edge_count();
    let mut idx = vec![0usize; m];
    loop {
        let assignment: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        let s = sums_of(g, &assignment);
        if g.edges()
            .iter()
            .all(|e| s[(e.u - 1) as usize] != s[(e.v - 1) as usize])
        {
            return true;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return false;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn degree_sum_is_twice_edges(g in graphs(12, 66)) {
        let total: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.edge_count());
        let reloaded = load_graph(&g.to_edge_list()).unwrap();
        prop_assert_eq!(reloaded.vertex_count(), g.vertex_count());
        prop_assert_eq!(reloaded.edges(), g.edges());
    }

    #[test]
    fn orientation_respects_cap(g in graphs(12, 66), cap in 1usize..5) {
        match degeneracy_orient(&g, cap) {
            Ok(o) => {
                prop_assert_eq!(o.heads().len(), g.edge_count());
                for (e, &h) in g.edges().iter().zip(o.heads()) {
                    prop_assert!(e.contains(h));
                }
                prop_assert!(o.indegrees(&g).iter().all(|&d| d <= cap));
            }
            Err(Error::NotDegenerate { .. }) => prop_assert!(cap < g.max_degree()),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
        prop_assert!(degeneracy_orient(&g, g.max_degree().max(1)).is_ok());
    }

    #[test]
    fn dual_has_degree_two(g in graphs(10, 45)) {
        let h = Hypergraph::dual_of(&g);
        prop_assert_eq!(h.ground_size() as usize, g.edge_count());
        if g.edge_count() > 0 {
            prop_assert_eq!(h.max_degree(), 2);
        }
    }

    #[test]
    fn kalkowski_finalized_sums_never_move(g in graphs(30, 200)) {
        let mut finalized: BTreeMap<Vertex, i64> = BTreeMap::new();
        let mut ok = true;
        let d = kalkowski_total_observed(&g, None, |v, fv, fe| {
            let sum = |x: Vertex| fv[(x - 1) as usize] + g.incident(x).iter().map(|&(_, e)| fe[e]).sum::<i64>();
            if g.degree(v) > 0 {
                finalized.insert(v, sum(v));
            }
            ok &= finalized.iter().all(|(&x, &s)| sum(x) == s);
            ok &= fv.iter().all(|&x| x == 1 || x == 2);
            ok &= fe.iter().all(|&x| (1..=3).contains(&x));
        }).unwrap();
        prop_assert!(ok);
        prop_assert!(verify_cool(&g, &d).unwrap().cool);
    }

    #[test]
    fn kalkowski_any_order(g in graphs(25, 150), seed in any::<u64>()) {
        let mut order: Vec<Vertex> = g.vertices().collect();
        let mut state = seed | 1;
        for i in (1..order.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            order.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let d = kalkowski_total(&g, Some(&order)).unwrap();
        prop_assert!(verify_cool(&g, &d).unwrap().cool);
    }

    #[test]
    fn edge_search_matches_enumeration(g in graphs(6, 8), k in 1usize..4) {
        let values: Vec<i64> = (1..=k as i64).collect();
        let as_f64: Vec<f64> = values.iter().map(|&x| x as f64).collect();
        let out = brute_force_edge(&g, &as_f64, DEFAULT_GRID_BUDGET).unwrap();
        prop_assert_eq!(out.is_found(), enumerate_edge_cool(&g, &values));
        if let Some(d) = out.found() {
            prop_assert!(verify_cool(&g, &d).unwrap().cool);
        }
    }

    #[test]
    fn dual_search_matches_edge_search(g in graphs(6, 8), c in 1u32..4) {
        let palette: Vec<f64> = (1..=c).map(f64::from).collect();
        let edge = brute_force_edge(&g, &palette, DEFAULT_GRID_BUDGET).unwrap();
        let hyper = brute_force_hypergraph(&Hypergraph::dual_of(&g), c, DEFAULT_GRID_BUDGET).unwrap();
        prop_assert_eq!(edge.is_found(), hyper.is_found());
    }

    #[test]
    fn edge_polynomial_evaluates_to_product(g in graphs(6, 8), points in proptest::collection::vec(-5i64..=5, 8)) {
        let p = build_edge_polynomial(&g, ExpansionBudget::default()).unwrap();
        let point = &points[..g.edge_count()];
        let s = sums_of(&g, point);
        let direct: i128 = g
            .edges()
            .iter()
            .map(|e| (s[(e.u - 1) as usize] - s[(e.v - 1) as usize]) as i128)
            .product();
        prop_assert_eq!(p.eval(point), direct);
        prop_assert!(p.is_uniform());
        if let Some(d) = p.degree() {
            prop_assert_eq!(d as usize, g.edge_count());
        }
    }

    #[test]
    fn certificates_decorate_every_list_family(
        g in graphs(5, 6),
        pool in proptest::collection::vec(proptest::sample::subsequence((-30i64..30).collect::<Vec<_>>(), 4), 6),
    ) {
        let p = build_edge_polynomial(&g, ExpansionBudget::default()).unwrap();
        let caps = vec![3u8; g.edge_count()];
        if let Some(cert) = find_certificate(&p, &caps).unwrap() {
            let lists: Vec<Vec<f64>> = cert
                .list_sizes()
                .iter()
                .zip(&pool)
                .map(|(&need, values)| values[..need].iter().map(|&x| x as f64).collect())
                .collect();
            let out = decorate_from_lists(&g, &ListMode::Edge, &lists, &cert, DEFAULT_GRID_BUDGET).unwrap();
            prop_assert!(verify_cool(&g, &out.found().unwrap()).unwrap().cool);
        }
    }

    #[test]
    fn bipartite_coefficients_count_choices(a in 1u32..4, b in 1u32..4, mask in any::<u16>()) {
        let pairs: Vec<(u32, u32)> = (1..=a)
            .flat_map(|u| (a + 1..=a + b).map(move |v| (u, v)))
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .take(6)
            .collect();
        let g = Graph::new(a + b, pairs).unwrap();
        let xs: Vec<Vertex> = (1..=a).collect();
        let ys: Vec<Vertex> = (a + 1..=a + b).collect();
        let p = build_bipartite_vertex_polynomial(&g, &xs, &ys, ExpansionBudget::default()).unwrap();

        // expand every choice of one variable per factor, unsigned
        let factors: Vec<Vec<usize>> = g
            .edges()
            .iter()
            .map(|e| {
                g.neighbors(e.u).chain(g.neighbors(e.v)).map(|w| (w - 1) as usize).collect()
            })
            .collect();
        let mut counts: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
        let mut stack = vec![(0usize, vec![0u8; (a + b) as usize])];
        while let Some((i, e)) = stack.pop() {
            if i == factors.len() {
                *counts.entry(e).or_insert(0) += 1;
                continue;
            }
            for &w in &factors[i] {
                let mut next = e.clone();
                next[w] += 1;
                stack.push((i + 1, next));
            }
        }
        for (e, c) in p.terms() {
            let x_degree: u32 = e[..a as usize].iter().map(|&k| k as u32).sum();
            let sign = if x_degree.is_multiple_of(2) { 1 } else { -1 };
            prop_assert_eq!(c, sign * counts[e]);
        }
        prop_assert_eq!(p.len(), counts.len());
    }

    #[test]
    fn colorings_are_multiplicative(pairs in proptest::collection::vec((1u64..1000, 1u64..1000), 100)) {
        let rules = [SignRule::Liouville, SignRule::Mod3Character, SignRule::residue_split(7).unwrap()];
        for rule in &rules {
            let f = build_coloring(rule, 1_000_000).unwrap();
            for &(a, b) in &pairs {
                prop_assert_eq!(f.eval(a * b).unwrap(), f.eval(a).unwrap() * f.eval(b).unwrap());
            }
        }
    }

    #[test]
    fn cascades_repeat_the_prefix(d in 1u64..2000, k in 1u64..50) {
        let f = build_coloring(&SignRule::Mod3Character, 100_000).unwrap();
        prop_assert!(cascade_balance(&f, d, k).is_ok());
    }

    #[test]
    fn segments_match_table(lo in 1u64..50_000, len in 1u64..5000) {
        let table = liouville_table(&SpfTable::new(60_000));
        let seg = liouville_segment(lo, lo + len, &primes_up_to(300));
        prop_assert_eq!(&table[lo as usize..(lo + len) as usize], &seg[..]);
    }

    #[test]
    fn rainbow_colors_scale(p in proptest::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]), a in 1u64..500, n in 1u64..10_000) {
        prop_assume!(a % p != 0);
        let lhs = rainbow_color(p, a * n).unwrap();
        prop_assert_eq!(lhs, a % p * rainbow_color(p, n).unwrap() % p);
        prop_assert!(lhs != 0);
    }

    #[test]
    fn rainbow_restricts_to_proper_colorings(p in proptest::sample::select(vec![2u64, 3, 5, 7]), lo in 1u64..500, len in 1u64..120) {
        let w = build_window(p - 1, lo, lo + len).unwrap();
        for (a, b) in w.edges() {
            prop_assert_ne!(rainbow_color(p, a).unwrap(), rainbow_color(p, b).unwrap());
        }
    }

    #[test]
    fn windows_hold_no_oversized_clique(k in 1u64..6, lo in 1u64..300) {
        let w = build_window(k, lo, lo + 80).unwrap();
        prop_assert!(clique_probe(&w, k as usize + 1).is_none());
    }
}

#[test]
fn seed_counts_are_powers_of_two() {
    for k in 1..=24usize {
        let rows = enumerate_seeds(k, DEFAULT_PRIME_BUDGET).unwrap();
        let pi = primes_up_to(k as u64).len();
        assert_eq!(rows.len(), 1 << pi, "k = {k}");
        assert!(rows.iter().all(|r| r.seed.is_range_multiplicative()));
        assert!(rows.iter().all(|r| r.golden == r.seed.is_golden()));
    }
}

#[test]
fn constructed_seeds_are_golden() {
    let mut fallback = Vec::new();
    for k in 2..=10_000 {
        let c = construct_seed(k, DEFAULT_PRIME_BUDGET).unwrap();
        assert!(c.seed.is_golden(), "k = {k}");
        assert_eq!(c.seed.len(), k);
        if c.construction == Construction::Fallback {
            fallback.push(k);
        }
    }
    // the flip path needs enough primes 1 mod 3 near the top of the range
    assert!(
        fallback.iter().all(|&k| k < 100),
        "fallback used at {fallback:?}"
    );
}

#[test]
fn rejmer_is_deterministic() {
    let a = rejmer_run(50_000).unwrap();
    let b = rejmer_run(50_000).unwrap();
    assert_eq!(a, b);
    assert!(a.halt.is_none());
    assert!(a
        .switches
        .iter()
        .all(|s| 2 * s.prime > s.step && s.prime <= s.step));
}
