mod common;

use common::{random_suite, shuffled};
use proptest::prelude::*;
use triad_balance::census::choose3;
use triad_balance::generate::random_signed_digraph;
use triad_balance::metrics::{descriptive_stats, descriptive_stats_with};
use triad_balance::oracle::{brute_force_balance, brute_force_census, exact_overall, ratio_to_f64};
use triad_balance::report::balance_json;
use triad_balance::{
    build_graph, classify_triad, enumerate_transitive_triads, full_census, full_census_with,
    network_balance, network_balance_with, prune, transitive_semicycles, with_threads,
    AggregationPolicy, CensusTable, PruneOptions, SignedDigraph, SignedEdge, Strategy, TriadType,
};

#[test]
fn census_matches_brute_force() {
    for case in random_suite() {
        let fast = full_census(&case.graph);
        let slow = brute_force_census(&case.graph).unwrap();
        assert_eq!(fast, slow, "n={} p={} seed={}", case.n, case.edge_prob, case.seed);
        assert_eq!(fast.total(), choose3(case.n as u64));
    }
}

#[test]
fn balance_matches_brute_force() {
    for case in random_suite() {
        let fast = network_balance(&case.graph);
        let slow = brute_force_balance(&case.graph).unwrap();
        assert_eq!(fast, slow, "seed={}", case.seed);
        assert_eq!(balance_json(&fast), balance_json(&slow));
        match (fast.overall(), exact_overall(&slow)) {
            (Some(x), Some(r)) => assert!((x - ratio_to_f64(&r)).abs() < 1e-12),
            (None, None) => {}
            other => panic!("overall disagrees: {other:?}"),
        }
    }
}

#[test]
fn transitive_stream_matches_census_rows() {
    for case in random_suite() {
        let census = full_census(&case.graph);
        let mut streamed = CensusTable::new();
        let mut previous = None;
        for t in enumerate_transitive_triads(&case.graph) {
            streamed.add(t.kind, 1);
            assert!(previous < Some(t.nodes), "stream must be strictly ordered");
            previous = Some(t.nodes);
            let names = t.nodes.map(|v| case.graph.name(v));
            assert_eq!(classify_triad(&case.graph, names).unwrap(), t.kind);
        }
        for kind in TriadType::ALL {
            let expected = if kind.is_transitive() { census.get(kind) } else { 0 };
            assert_eq!(streamed.get(kind), expected);
        }
    }
}

#[test]
fn classification_ignores_argument_order() {
    let g = random_signed_digraph(8, 0.4, 0.5, 3);
    let names = g.names().to_vec();
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                let [x, y, z] = [&names[a], &names[b], &names[c]].map(String::as_str);
                let t = classify_triad(&g, [x, y, z]).unwrap();
                for perm in [[x, z, y], [y, x, z], [y, z, x], [z, x, y], [z, y, x]] {
                    assert_eq!(classify_triad(&g, perm).unwrap(), t);
                }
            }
        }
    }
}

#[test]
fn relabeling_preserves_census_and_balance() {
    for case in random_suite().into_iter().step_by(7) {
        let census = full_census(&case.graph);
        let balance = network_balance(&case.graph);
        for k in 0..3 {
            let g = shuffled(&case.graph, case.seed * 10 + k);
            assert_eq!(full_census(&g), census);
            assert_eq!(network_balance(&g).per_type, balance.per_type);
        }
    }
}

#[test]
fn semicycle_multiplicity() {
    for case in random_suite() {
        for t in enumerate_transitive_triads(&case.graph) {
            let s = transitive_semicycles(&case.graph, t.nodes, t.kind).unwrap();
            assert_eq!(s.len() as u32, t.kind.semicycle_count().unwrap());
            for sc in &s {
                let [a, b, c] = sc.nodes;
                let g = &case.graph;
                assert!(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c));
            }
        }
        let report = network_balance(&case.graph);
        assert_eq!(report.get(TriadType::T030T).unwrap().pb_count, 0);
    }
}

#[test]
fn sign_flip_duality() {
    for case in random_suite() {
        let before = network_balance(&case.graph);
        let after = network_balance(&case.graph.negated());
        for (x, y) in before.per_type.iter().zip(after.per_type.iter()) {
            assert_eq!((x.cb_count, x.pb_count, x.ci_count), (y.ci_count, y.pb_count, y.cb_count));
            assert_eq!(x.positive_sixths + y.positive_sixths, 6 * x.triad_count);
        }
    }
}

#[test]
fn balance_classes_partition_each_type() {
    for case in random_suite() {
        for t in network_balance(&case.graph).per_type {
            assert_eq!(t.cb_count + t.pb_count + t.ci_count, t.triad_count);
            assert_eq!(t.nonzero_count + t.zero_count, t.triad_count);
            if let Some(r) = t.ratio() {
                assert!((0.0..=1.0).contains(&r));
            }
        }
    }
}

#[test]
fn sign_census_ratios_sum_to_one() {
    for case in random_suite() {
        let signs = network_balance(&case.graph).signs;
        if signs.total() > 0 {
            let sum: f64 = signs.iter().map(|(p, _)| signs.ratio(p).unwrap()).sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn strategies_and_pool_sizes_agree() {
    for case in random_suite().into_iter().step_by(5) {
        let g = &case.graph;
        let seq = (full_census_with(g, Strategy::Sequential), network_balance_with(g, Strategy::Sequential));
        let par = (full_census_with(g, Strategy::Parallel), network_balance_with(g, Strategy::Parallel));
        assert_eq!(seq, par);
        let one = with_threads(Some(1), || (full_census(g), network_balance(g))).unwrap();
        let four = with_threads(Some(4), || (full_census(g), network_balance(g))).unwrap();
        assert_eq!(one, four);
        assert_eq!(one, seq);
        assert_eq!(
            descriptive_stats_with(g, Strategy::Sequential),
            descriptive_stats_with(g, Strategy::Parallel)
        );
    }
}

#[test]
fn pruning_keeps_transitive_counts() {
    for case in random_suite().into_iter().filter(|c| c.edge_prob <= 0.3) {
        let before = full_census(&case.graph);
        let pruned = prune(&case.graph, PruneOptions::ALL);
        let after = full_census(&pruned);
        for kind in TriadType::TRANSITIVE {
            assert_eq!(before.get(kind), after.get(kind));
        }
        assert_eq!(prune(&pruned, PruneOptions::ALL), pruned);
    }
}

/// Dense, obviously-correct versions of the descriptive measures.
mod naive {
    use triad_balance::SignedDigraph;

    pub struct Dense {
        pub n: usize,
        pub adj: Vec<Vec<bool>>,
    }

    impl Dense {
        pub fn new(g: &SignedDigraph) -> Self {
            let n = g.node_count();
            let mut adj = vec![vec![false; n]; n];
            for (s, t, _) in g.edges() {
                if s != t {
                    adj[s as usize][t as usize] = true;
                }
            }
            Dense { n, adj }
        }

        fn und(&self, a: usize, b: usize) -> bool {
            a != b && (self.adj[a][b] || self.adj[b][a])
        }

        pub fn transitivity(&self) -> Option<f64> {
            let (mut paths, mut closed) = (0u64, 0u64);
            for a in 0..self.n {
                for b in 0..self.n {
                    for c in 0..self.n {
                        if a != b && b != c && a != c && self.adj[a][b] && self.adj[b][c] {
                            paths += 1;
                            closed += self.adj[a][c] as u64;
                        }
                    }
                }
            }
            (paths > 0).then(|| closed as f64 / paths as f64)
        }

        pub fn clustering(&self) -> Option<f64> {
            let mut values = Vec::new();
            for v in 0..self.n {
                let nb: Vec<usize> = (0..self.n).filter(|&u| self.und(v, u)).collect();
                if nb.len() < 2 {
                    continue;
                }
                let mut links = 0;
                for i in 0..nb.len() {
                    for j in i + 1..nb.len() {
                        links += self.und(nb[i], nb[j]) as usize;
                    }
                }
                values.push(links as f64 / (nb.len() * (nb.len() - 1) / 2) as f64);
            }
            (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
        }

        pub fn centralization(&self) -> Option<f64> {
            if self.n < 3 {
                return None;
            }
            let deg: Vec<usize> = (0..self.n)
                .map(|v| (0..self.n).filter(|&u| self.adj[v][u]).count() + (0..self.n).filter(|&u| self.adj[u][v]).count())
                .collect();
            let max = *deg.iter().max().unwrap();
            let spread: usize = deg.iter().map(|d| max - d).sum();
            Some(spread as f64 / (2 * (self.n - 1) * (self.n - 2)) as f64)
        }

        /// Floyd-Warshall over the undirected projection.
        pub fn distances(&self) -> Vec<Vec<u32>> {
            let inf = u32::MAX / 2;
            let mut d = vec![vec![inf; self.n]; self.n];
            for (a, row) in d.iter_mut().enumerate() {
                for (b, cell) in row.iter_mut().enumerate() {
                    if a == b {
                        *cell = 0;
                    } else if self.und(a, b) {
                        *cell = 1;
                    }
                }
            }
            for k in 0..self.n {
                for i in 0..self.n {
                    for j in 0..self.n {
                        if d[i][k] + d[k][j] < d[i][j] {
                            d[i][j] = d[i][k] + d[k][j];
                        }
                    }
                }
            }
            d
        }

        /// (component count, largest size, mean path length in largest)
        pub fn components(&self) -> (usize, usize, Option<f64>) {
            let d = self.distances();
            let inf = u32::MAX / 2;
            let mut seen = vec![false; self.n];
            let mut comps: Vec<Vec<usize>> = Vec::new();
            for v in 0..self.n {
                if !seen[v] {
                    let members: Vec<usize> = (0..self.n).filter(|&u| d[v][u] < inf).collect();
                    for &u in &members {
                        seen[u] = true;
                    }
                    comps.push(members);
                }
            }
            let Some(best) = comps.iter().max_by_key(|c| c.len()) else {
                return (0, 0, None);
            };
            let k = best.len();
            let apl = (k >= 2).then(|| {
                let mut sum = 0u64;
                for &a in best {
                    for &b in best {
                        sum += d[a][b] as u64;
                    }
                }
                sum as f64 / (k * (k - 1)) as f64
            });
            (comps.len(), k, apl)
        }
    }
}

fn close(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => (x - y).abs() < 1e-12,
        (None, None) => true,
        _ => false,
    }
}

#[test]
fn metrics_match_naive_reference() {
    for case in random_suite().into_iter().step_by(3) {
        let g = &case.graph;
        let s = descriptive_stats(g);
        let d = naive::Dense::new(g);
        let (comps, largest, apl) = d.components();
        assert!(close(s.global_transitivity, d.transitivity()), "seed {}", case.seed);
        assert!(close(s.clustering_coefficient, d.clustering()));
        assert!(close(s.degree_centralization, d.centralization()));
        assert!(close(s.average_path_length, apl));
        assert_eq!((s.component_count, s.largest_component_size), (comps, largest));
        let n = g.node_count() as f64;
        assert!(close(s.density, Some(g.edge_count() as f64 / (n * (n - 1.0)))));
    }
}

#[test]
fn metrics_are_sign_blind_and_isolate_stable() {
    for case in random_suite().into_iter().step_by(4) {
        let g = &case.graph;
        let s = descriptive_stats(g);
        assert_eq!(descriptive_stats(&g.negated()), s);

        let mut edges: Vec<SignedEdge> = g
            .edges()
            .map(|(a, b, w)| SignedEdge::new(g.name(a), g.name(b), w).unwrap())
            .collect();
        edges.sort_by(|x, y| x.source().cmp(y.source()));
        let mut builder = triad_balance::GraphBuilder::new();
        for name in g.names() {
            builder.add_node(name.as_str());
        }
        builder.add_node("zz-isolate").extend(edges);
        let with_isolate = builder.build(AggregationPolicy::Mean).unwrap();
        let t = descriptive_stats(&with_isolate);
        assert_eq!(t.node_count, s.node_count + 1);
        assert_eq!(t.component_count, s.component_count + 1);
        assert_eq!(t.global_transitivity, s.global_transitivity);
        assert_eq!(t.clustering_coefficient, s.clustering_coefficient);
    }
}

fn arb_records() -> impl proptest::strategy::Strategy<Value = Vec<(u8, u8, i8)>> {
    proptest::collection::vec((0u8..6, 0u8..6, -4i8..=4), 0..40)
}

fn to_edges(records: &[(u8, u8, i8)]) -> Vec<SignedEdge> {
    records
        .iter()
        .enumerate()
        .filter_map(|(i, &(s, t, w))| {
            SignedEdge::new(format!("v{s}"), format!("v{t}"), w as f64 / 4.0)
                .map(|e| e.with_timestamp(i as u64))
        })
        .collect()
}

proptest! {
    #[test]
    fn mean_is_order_independent(records in arb_records(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let edges = to_edges(&records);
        let mut shuffled_edges = edges.clone();
        shuffled_edges.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let a = build_graph(edges, AggregationPolicy::Mean).unwrap();
        let b = build_graph(shuffled_edges, AggregationPolicy::Mean).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn first_last_depend_only_on_timestamps(records in arb_records()) {
        let edges = to_edges(&records);
        let mut reversed = edges.clone();
        reversed.reverse();
        for policy in [AggregationPolicy::First, AggregationPolicy::Last] {
            prop_assert_eq!(
                build_graph(edges.clone(), policy).unwrap(),
                build_graph(reversed.clone(), policy).unwrap()
            );
        }
    }

    #[test]
    fn built_graphs_are_simple(records in arb_records()) {
        let edges = to_edges(&records);
        let pairs: std::collections::BTreeSet<_> =
            edges.iter().map(|e| (e.source().to_owned(), e.target().to_owned())).collect();
        let g = build_graph(edges, AggregationPolicy::Mean).unwrap();
        prop_assert!(g.edge_count() <= pairs.len());
        for (s, t, w) in g.edges() {
            prop_assert!(w != 0.0);
            prop_assert!(g.in_arcs(t).iter().any(|a| a.node == s && a.weight == w));
        }
    }

    #[test]
    fn prune_is_idempotent(records in arb_records(), loops: bool, isolates: bool, pendants: bool) {
        let g = build_graph(to_edges(&records), AggregationPolicy::Mean).unwrap();
        let opts = PruneOptions { self_loops: loops, isolates, pendants };
        let once = prune(&g, opts);
        prop_assert_eq!(prune(&once, opts), once.clone());
        let before = full_census(&g);
        let after = full_census(&once);
        for kind in TriadType::TRANSITIVE {
            prop_assert_eq!(before.get(kind), after.get(kind));
        }
    }

    #[test]
    fn census_total_is_choose3(n in 0usize..30, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g: SignedDigraph = random_signed_digraph(n, p, 0.5, seed);
        prop_assert_eq!(full_census(&g).total(), choose3(n as u64));
    }
}
