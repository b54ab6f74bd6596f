//! Seeded synthetic signed digraphs for fixtures and benchmarks.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{AggregationPolicy, GraphBuilder, SignedDigraph, SignedEdge};

/// Zero-padded so that name order equals numeric order.
pub fn node_name(i: usize, n: usize) -> String {
    let width = n.saturating_sub(1).to_string().len();
    format!("n{i:0width$}")
}

fn edge(rng: &mut ChaCha8Rng, s: usize, t: usize, n: usize, positive_prob: f64) -> SignedEdge {
    let w = if rng.gen_bool(positive_prob) { 1.0 } else { -1.0 };
    SignedEdge::new(node_name(s, n), node_name(t, n), w).unwrap()
}

/// Each ordered pair carries an edge with probability `edge_prob`; each edge
/// is positive with probability `positive_prob`. All `n` nodes are kept.
pub fn random_signed_digraph(n: usize, edge_prob: f64, positive_prob: f64, seed: u64) -> SignedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_node(node_name(v, n));
    }
    for s in 0..n {
        for t in 0..n {
            if s != t && rng.gen_bool(edge_prob) {
                let e = edge(&mut rng, s, t, n, positive_prob);
                b.add_edge(e);
            }
        }
    }
    b.build(AggregationPolicy::Mean).unwrap()
}

/// Exactly `m` distinct directed edges chosen uniformly among ordered pairs.
pub fn random_signed_digraph_m(n: usize, m: usize, positive_prob: f64, seed: u64) -> SignedDigraph {
    assert!(n >= 2 && m <= n * (n - 1), "{m} edges do not fit on {n} nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.add_node(node_name(v, n));
    }
    while seen.len() < m {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if s != t && seen.insert((s, t)) {
            let e = edge(&mut rng, s, t, n, positive_prob);
            b.add_edge(e);
        }
    }
    b.build(AggregationPolicy::Mean).unwrap()
}
