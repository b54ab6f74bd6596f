#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triad_balance::generate::random_signed_digraph;
use triad_balance::{build_graph, AggregationPolicy, SignedDigraph, SignedEdge, TriadType};

pub struct SuiteGraph {
    pub n: usize,
    pub edge_prob: f64,
    pub positive_prob: f64,
    pub seed: u64,
    pub graph: SignedDigraph,
}

/// 270 seeded graphs: n in 3..=12, edge probability 0.1..=0.9, positive
/// probability in {0.1, 0.5, 0.9}.
pub fn random_suite() -> Vec<SuiteGraph> {
    let mut out = Vec::new();
    let mut seed = 1000;
    for n in 3..=12 {
        for p10 in 1..=9 {
            for positive_prob in [0.1, 0.5, 0.9] {
                seed += 1;
                let edge_prob = p10 as f64 / 10.0;
                out.push(SuiteGraph {
                    n,
                    edge_prob,
                    positive_prob,
                    seed,
                    graph: random_signed_digraph(n, edge_prob, positive_prob, seed),
                });
            }
        }
    }
    out
}

/// Same graph with node names shuffled by `seed`.
pub fn shuffled(g: &SignedDigraph, seed: u64) -> SignedDigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets: Vec<String> = g.names().iter().map(|n| format!("r{n}")).collect();
    targets.shuffle(&mut rng);
    let map: std::collections::HashMap<&str, String> = g
        .names()
        .iter()
        .map(String::as_str)
        .zip(targets)
        .collect();
    g.relabeled(|name| map[name].clone())
}

/// Edge signs, as `(from, to, sign)` on local nodes 0..3, that give a triad
/// of `kind` exactly `positive` balanced semicycles. Found by enumerating
/// every sign assignment of the type's edge pattern.
pub fn triad_signs(kind: TriadType, positive: u32) -> Vec<(usize, usize, f64)> {
    let pattern: &[(usize, usize)] = match kind {
        TriadType::T030T => &[(0, 1), (1, 2), (0, 2)],
        TriadType::T120D => &[(0, 1), (0, 2), (1, 2), (2, 1)],
        TriadType::T120U => &[(0, 2), (1, 2), (0, 1), (1, 0)],
        TriadType::T300 => &[(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)],
        _ => panic!("{kind} is not transitive"),
    };
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for mask in 0u32..(1 << pattern.len()) {
        let sign = |x: usize, y: usize| -> Option<f64> {
            pattern
                .iter()
                .position(|&e| e == (x, y))
                .map(|i| if mask & (1 << i) != 0 { -1.0 } else { 1.0 })
        };
        let mut pos = 0;
        for [a, b, c] in perms {
            if let (Some(ab), Some(bc), Some(ac)) = (sign(a, b), sign(b, c), sign(a, c)) {
                if ab * bc * ac > 0.0 {
                    pos += 1;
                }
            }
        }
        if pos == positive {
            return pattern
                .iter()
                .map(|&(x, y)| (x, y, sign(x, y).unwrap()))
                .collect();
        }
    }
    panic!("no {kind} triad with {positive} balanced semicycles");
}

/// A graph of disjoint triads; `layout` lists `(kind, positive semicycles, copies)`.
pub fn disjoint_triads(layout: &[(TriadType, u32, usize)]) -> SignedDigraph {
    let mut edges = Vec::new();
    let mut next = 0usize;
    for &(kind, positive, copies) in layout {
        let signs = triad_signs(kind, positive);
        for _ in 0..copies {
            let names = [next, next + 1, next + 2].map(|i| format!("t{i:07}"));
            next += 3;
            for &(x, y, w) in &signs {
                edges.push(SignedEdge::new(names[x].as_str(), names[y].as_str(), w).unwrap());
            }
        }
    }
    build_graph(edges, AggregationPolicy::Mean).unwrap()
}
