//! Descriptive network measures.
//!
//! | field                   | computed on                 |
//! |-------------------------|-----------------------------|
//! | density                 | directed graph, `m/(n(n-1))`|
//! | global transitivity     | directed two-paths          |
//! | degree centralization   | total (in + out) degree     |
//! | clustering coefficient  | undirected projection       |
//! | components, path length | undirected projection       |
//!
//! Self-loops are ignored everywhere. All measures are sign-blind.

use std::collections::VecDeque;

use serde::Serialize;

use crate::graph::{NodeId, SignedDigraph};
use crate::par::{fold_anchors, Strategy};

/// Fields that are undefined for the graph at hand are `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NetworkStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub density: Option<f64>,
    pub global_transitivity: Option<f64>,
    pub degree_centralization: Option<f64>,
    pub average_path_length: Option<f64>,
    pub clustering_coefficient: Option<f64>,
    pub component_count: usize,
    pub largest_component_size: usize,
}

impl NetworkStats {
    /// `(label, value)` rows in the conventional table order.
    pub fn rows(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("# of nodes", Some(self.node_count as f64)),
            ("# of edges", Some(self.edge_count as f64)),
            ("Transitivity", self.global_transitivity),
            ("Degree Centralization", self.degree_centralization),
            ("Density", self.density),
            ("Average Path Length", self.average_path_length),
            ("Clustering Coefficient", self.clustering_coefficient),
            ("# of Components", Some(self.component_count as f64)),
            (
                "# of node in largest component",
                Some(self.largest_component_size as f64),
            ),
        ]
    }
}

pub fn descriptive_stats(g: &SignedDigraph) -> NetworkStats {
    descriptive_stats_with(g, Strategy::default())
}

pub fn descriptive_stats_with(g: &SignedDigraph, strategy: Strategy) -> NetworkStats {
    let n = g.node_count();
    let m = g.edge_count() - g.self_loop_count();
    let density = (n >= 2).then(|| m as f64 / (n as f64 * (n as f64 - 1.0)));

    let (closed, paths) = fold_anchors(
        n,
        strategy,
        || (0u64, 0u64),
        |acc, b| two_paths_through(g, b, acc),
        |x, y| (x.0 + y.0, x.1 + y.1),
    );
    let global_transitivity = (paths > 0).then(|| closed as f64 / paths as f64);

    let (components, largest) = components(g);
    let component_count = components.iter().copied().max().map_or(0, |c| c as usize + 1);

    NetworkStats {
        node_count: n,
        edge_count: m,
        density,
        global_transitivity,
        degree_centralization: degree_centralization(g),
        average_path_length: average_path_length(g, &components, largest, strategy),
        clustering_coefficient: mean_clustering(g),
        component_count,
        largest_component_size: largest.map_or(0, |(_, size)| size),
    }
}

/// Adds the two-paths `a -> b -> c` (`a != c`) through `b` and how many of
/// them are closed by `a -> c`.
fn two_paths_through(g: &SignedDigraph, b: NodeId, (mut closed, mut paths): (u64, u64)) -> (u64, u64) {
    for a in g.in_arcs(b).iter().map(|x| x.node).filter(|&a| a != b) {
        for c in g.out_arcs(b).iter().map(|x| x.node).filter(|&c| c != b && c != a) {
            paths += 1;
            if g.has_edge(a, c) {
                closed += 1;
            }
        }
    }
    (closed, paths)
}

fn loopless_degree(g: &SignedDigraph, v: NodeId) -> usize {
    let loops = if g.has_edge(v, v) { 2 } else { 0 };
    g.total_degree(v) - loops
}

/// Freeman centralization over total degree, normalised by the maximum
/// `2(n-1)(n-2)` reached by a star with reciprocated spokes.
fn degree_centralization(g: &SignedDigraph) -> Option<f64> {
    let n = g.node_count();
    if n < 3 {
        return None;
    }
    let degrees: Vec<usize> = g.node_ids().map(|v| loopless_degree(g, v)).collect();
    let max = *degrees.iter().max().unwrap();
    let spread: usize = degrees.iter().map(|d| max - d).sum();
    Some(spread as f64 / (2 * (n - 1) * (n - 2)) as f64)
}

/// Mean local clustering of the undirected projection over nodes with at
/// least two neighbours.
fn mean_clustering(g: &SignedDigraph) -> Option<f64> {
    let mut sum = 0.0;
    let mut counted = 0usize;
    for v in g.node_ids() {
        let nb = g.neighbors(v);
        let k = nb.len();
        if k < 2 {
            continue;
        }
        let mut links = 0usize;
        for (i, &x) in nb.iter().enumerate() {
            links += nb[i + 1..].iter().filter(|&&y| g.adjacent(x, y)).count();
        }
        sum += links as f64 / (k * (k - 1) / 2) as f64;
        counted += 1;
    }
    (counted > 0).then(|| sum / counted as f64)
}

/// Component label per node and the `(label, size)` of the largest component
/// (smallest label on ties).
fn components(g: &SignedDigraph) -> (Vec<u32>, Option<(u32, usize)>) {
    let n = g.node_count();
    let mut label = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        label[start] = id;
        queue.push_back(start as NodeId);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &u in g.neighbors(v) {
                if label[u as usize] == u32::MAX {
                    label[u as usize] = id;
                    queue.push_back(u);
                }
            }
        }
        sizes.push(size);
    }
    let largest = sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, &s)| (i as u32, s));
    (label, largest)
}

/// Mean shortest-path length over ordered pairs inside the largest component.
fn average_path_length(
    g: &SignedDigraph,
    labels: &[u32],
    largest: Option<(u32, usize)>,
    strategy: Strategy,
) -> Option<f64> {
    let (comp, size) = largest?;
    if size < 2 {
        return None;
    }
    let n = g.node_count();
    let total: u64 = fold_anchors(
        n,
        strategy,
        || 0u64,
        |acc, s| {
            if labels[s as usize] != comp {
                return acc;
            }
            acc + bfs_distance_sum(g, s)
        },
        |a, b| a + b,
    );
    let pairs = size as u64 * (size as u64 - 1);
    Some(total as f64 / pairs as f64)
}

fn bfs_distance_sum(g: &SignedDigraph, s: NodeId) -> u64 {
    let mut dist = vec![u32::MAX; g.node_count()];
    dist[s as usize] = 0;
    let mut queue = VecDeque::from([s]);
    let mut sum = 0u64;
    while let Some(v) = queue.pop_front() {
        let d = dist[v as usize];
        sum += d as u64;
        for &u in g.neighbors(v) {
            if dist[u as usize] == u32::MAX {
                dist[u as usize] = d + 1;
                queue.push_back(u);
            }
        }
    }
    sum
}
