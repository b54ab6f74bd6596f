//! Signed digraph model, multi-edge aggregation and structural pruning.
//!
//! Node ids are opaque strings. Inside a built graph every node gets a dense
//! [`NodeId`] assigned in lexicographic order of its name, so comparing ids
//! compares names and a sorted id triple is also the canonical name triple.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::ops::{Mul, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index, valid only for the graph that issued it.
pub type NodeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    /// Strict sign of a nonzero finite weight; `None` for zero and non-finite input.
    pub fn of(weight: f64) -> Option<Sign> {
        if !weight.is_finite() || weight == 0.0 {
            None
        } else if weight > 0.0 {
            Some(Sign::Positive)
        } else {
            Some(Sign::Negative)
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char(self.symbol())
    }
}

/// A directed edge carrying a nonzero score whose sign is the edge sign.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedEdge {
    source: String,
    target: String,
    weight: f64,
    timestamp: Option<u64>,
}

impl SignedEdge {
    /// Returns `None` when `weight` is zero or not finite: neutral edges never
    /// enter a graph.
    pub fn new(source: impl Into<String>, target: impl Into<String>, weight: f64) -> Option<Self> {
        Sign::of(weight)?;
        Some(SignedEdge {
            source: source.into(),
            target: target.into(),
            weight,
            timestamp: None,
        })
    }

    pub fn with_timestamp(mut self, t: u64) -> Self {
        self.timestamp = Some(t);
        self
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn sign(&self) -> Sign {
        // nonzero by construction
        Sign::of(self.weight).unwrap()
    }

    pub fn timestamp(&self) -> Option<u64> {
        self.timestamp
    }
}

/// How repeated records between the same ordered pair collapse into one edge.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregationPolicy {
    #[default]
    Mean,
    First,
    Last,
}

impl AggregationPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            AggregationPolicy::Mean => "mean",
            AggregationPolicy::First => "first",
            AggregationPolicy::Last => "last",
        }
    }
}

impl fmt::Display for AggregationPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AggregationPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mean" => Ok(AggregationPolicy::Mean),
            "first" => Ok(AggregationPolicy::First),
            "last" => Ok(AggregationPolicy::Last),
            _ => Err(Error::UnknownPolicy(s.to_owned())),
        }
    }
}

/// One adjacency entry: the node at the other end and the edge weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub node: NodeId,
    pub weight: f64,
}

impl Arc {
    pub fn sign(&self) -> Sign {
        Sign::of(self.weight).unwrap()
    }
}

/// Immutable signed digraph with at most one edge per ordered pair.
///
/// Out- and in-adjacency lists are kept sorted by node id and mirror each
/// other exactly. Self-loops are representable so that [`prune`] has
/// something to remove; analysis code ignores them.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedDigraph {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    out: Vec<Vec<Arc>>,
    inc: Vec<Vec<Arc>>,
    // undirected neighbours, self excluded
    nbrs: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl SignedDigraph {
    /// Assembles a graph from a node set and unique `(source, target) -> weight` edges.
    fn assemble(mut nodes: BTreeSet<String>, edges: BTreeMap<(String, String), f64>) -> Self {
        for (s, t) in edges.keys() {
            nodes.insert(s.clone());
            nodes.insert(t.clone());
        }
        let names: Vec<String> = nodes.into_iter().collect();
        let index: HashMap<String, NodeId> = names
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), i as NodeId))
            .collect();
        let n = names.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let edge_count = edges.len();
        for ((s, t), weight) in edges {
            let (s, t) = (index[&s], index[&t]);
            out[s as usize].push(Arc { node: t, weight });
            inc[t as usize].push(Arc { node: s, weight });
        }
        Self::finish(names, index, out, inc, edge_count)
    }

    fn finish(
        names: Vec<String>,
        index: HashMap<String, NodeId>,
        mut out: Vec<Vec<Arc>>,
        mut inc: Vec<Vec<Arc>>,
        edge_count: usize,
    ) -> Self {
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable_by_key(|a| a.node);
        }
        let nbrs = (0..names.len())
            .map(|v| {
                let mut merged: Vec<NodeId> = out[v]
                    .iter()
                    .chain(inc[v].iter())
                    .map(|a| a.node)
                    .filter(|&u| u as usize != v)
                    .collect();
                merged.sort_unstable();
                merged.dedup();
                merged
            })
            .collect();
        SignedDigraph {
            names,
            index,
            out,
            inc,
            nbrs,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<NodeId> {
        self.id(name).ok_or_else(|| Error::UnknownNode(name.to_owned()))
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        0..self.names.len() as NodeId
    }

    pub fn out_arcs(&self, v: NodeId) -> &[Arc] {
        &self.out[v as usize]
    }

    pub fn in_arcs(&self, v: NodeId) -> &[Arc] {
        &self.inc[v as usize]
    }

    /// Sorted undirected neighbourhood of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.nbrs[v as usize]
    }

    pub fn weight(&self, from: NodeId, to: NodeId) -> Option<f64> {
        let arcs = &self.out[from as usize];
        arcs.binary_search_by_key(&to, |a| a.node)
            .ok()
            .map(|i| arcs[i].weight)
    }

    pub fn sign(&self, from: NodeId, to: NodeId) -> Option<Sign> {
        self.weight(from, to).and_then(Sign::of)
    }

    #[inline]
    pub fn has_edge(&self, from: NodeId, to: NodeId) -> bool {
        self.out[from as usize]
            .binary_search_by_key(&to, |a| a.node)
            .is_ok()
    }

    /// True when at least one of `u -> v`, `v -> u` exists.
    #[inline]
    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.nbrs[u as usize].binary_search(&v).is_ok()
    }

    /// In-degree plus out-degree; a self-loop counts twice.
    pub fn total_degree(&self, v: NodeId) -> usize {
        self.out[v as usize].len() + self.inc[v as usize].len()
    }

    pub fn self_loop_count(&self) -> usize {
        self.node_ids().filter(|&v| self.has_edge(v, v)).count()
    }

    /// All edges as `(source, target, weight)`, ordered by source then target.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.out.iter().enumerate().flat_map(|(s, arcs)| {
            arcs.iter().map(move |a| (s as NodeId, a.node, a.weight))
        })
    }

    /// Same structure with every edge sign flipped.
    pub fn negated(&self) -> SignedDigraph {
        let flip = |lists: &Vec<Vec<Arc>>| -> Vec<Vec<Arc>> {
            lists
                .iter()
                .map(|arcs| {
                    arcs.iter()
                        .map(|a| Arc { node: a.node, weight: -a.weight })
                        .collect()
                })
                .collect()
        };
        SignedDigraph {
            names: self.names.clone(),
            index: self.index.clone(),
            out: flip(&self.out),
            inc: flip(&self.inc),
            nbrs: self.nbrs.clone(),
            edge_count: self.edge_count,
        }
    }

    /// Renames every node through `rename`, keeping the edge structure.
    /// `rename` must be injective.
    pub fn relabeled<F: FnMut(&str) -> String>(&self, mut rename: F) -> SignedDigraph {
        let names: Vec<String> = self.names.iter().map(|n| rename(n)).collect();
        let nodes: BTreeSet<String> = names.iter().cloned().collect();
        assert_eq!(nodes.len(), names.len(), "relabeling must be injective");
        let edges = self
            .edges()
            .map(|(s, t, w)| ((names[s as usize].clone(), names[t as usize].clone()), w))
            .collect();
        SignedDigraph::assemble(nodes, edges)
    }

    /// Graphviz rendering; positive edges green, negative edges red.
    pub fn to_dot(&self) -> String {
        let mut dot = String::from("digraph G {\n");
        for name in &self.names {
            let _ = writeln!(dot, "  \"{}\";", escape_dot(name));
        }
        for (s, t, w) in self.edges() {
            let sign = Sign::of(w).unwrap();
            let color = if sign.is_positive() { "green" } else { "red" };
            let _ = writeln!(
                dot,
                "  \"{}\" -> \"{}\" [sign=\"{}\", weight={}, color={}];",
                escape_dot(self.name(s)),
                escape_dot(self.name(t)),
                sign,
                w,
                color
            );
        }
        dot.push_str("}\n");
        dot
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Collects nodes and signed edge records, then builds a [`SignedDigraph`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    nodes: BTreeSet<String>,
    edges: Vec<SignedEdge>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node that may have no edges.
    pub fn add_node(&mut self, name: impl Into<String>) -> &mut Self {
        self.nodes.insert(name.into());
        self
    }

    pub fn add_edge(&mut self, edge: SignedEdge) -> &mut Self {
        self.edges.push(edge);
        self
    }

    pub fn extend<I: IntoIterator<Item = SignedEdge>>(&mut self, edges: I) -> &mut Self {
        self.edges.extend(edges);
        self
    }

    /// Collapses duplicate `(source, target)` records under `policy`.
    ///
    /// `Mean` sums each group's weights in sorted order, so the result does
    /// not depend on record order. `First`/`Last` pick by timestamp (ties go
    /// to the earlier record) and need a timestamp on every record. A
    /// combined weight of exactly zero drops the edge.
    pub fn build(&self, policy: AggregationPolicy) -> Result<SignedDigraph> {
        let mut groups: BTreeMap<(&str, &str), Vec<(usize, &SignedEdge)>> = BTreeMap::new();
        for (index, edge) in self.edges.iter().enumerate() {
            if edge.source.is_empty() || edge.target.is_empty() {
                return Err(Error::MalformedRecord {
                    index,
                    reason: "empty node id".into(),
                });
            }
            if policy != AggregationPolicy::Mean && edge.timestamp.is_none() {
                return Err(Error::MissingTimestamp {
                    index,
                    policy: policy.as_str(),
                });
            }
            groups
                .entry((edge.source.as_str(), edge.target.as_str()))
                .or_default()
                .push((index, edge));
        }

        let mut nodes = self.nodes.clone();
        let mut edges = BTreeMap::new();
        for ((s, t), group) in groups {
            nodes.insert(s.to_owned());
            nodes.insert(t.to_owned());
            let weight = match policy {
                AggregationPolicy::Mean => {
                    let mut ws: Vec<f64> = group.iter().map(|(_, e)| e.weight).collect();
                    ws.sort_by(f64::total_cmp);
                    ws.iter().sum::<f64>() / ws.len() as f64
                }
                AggregationPolicy::First => {
                    group
                        .iter()
                        .min_by_key(|(i, e)| (e.timestamp, *i))
                        .unwrap()
                        .1
                        .weight
                }
                AggregationPolicy::Last => {
                    group
                        .iter()
                        .max_by_key(|(i, e)| (e.timestamp, std::cmp::Reverse(*i)))
                        .unwrap()
                        .1
                        .weight
                }
            };
            if weight != 0.0 {
                edges.insert((s.to_owned(), t.to_owned()), weight);
            }
        }
        Ok(SignedDigraph::assemble(nodes, edges))
    }
}

/// Builds a graph from signed edge records, collapsing duplicates under `policy`.
pub fn build_graph<I>(edges: I, policy: AggregationPolicy) -> Result<SignedDigraph>
where
    I: IntoIterator<Item = SignedEdge>,
{
    let mut builder = GraphBuilder::new();
    builder.extend(edges);
    builder.build(policy)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneOptions {
    pub self_loops: bool,
    pub isolates: bool,
    pub pendants: bool,
}

impl PruneOptions {
    pub const ALL: PruneOptions = PruneOptions {
        self_loops: true,
        isolates: true,
        pendants: true,
    };
    pub const NONE: PruneOptions = PruneOptions {
        self_loops: false,
        isolates: false,
        pendants: false,
    };
}

impl Default for PruneOptions {
    fn default() -> Self {
        PruneOptions::ALL
    }
}

/// Removes self-loops, isolates (total degree 0) and pendants (total degree
/// 1) as flagged. Node removal repeats until nothing else qualifies.
pub fn prune(g: &SignedDigraph, opts: PruneOptions) -> SignedDigraph {
    let n = g.node_count();
    let mut alive = vec![true; n];
    let mut edges: Vec<(NodeId, NodeId, f64)> = g
        .edges()
        .filter(|&(s, t, _)| !(opts.self_loops && s == t))
        .collect();

    if opts.isolates || opts.pendants {
        loop {
            let mut degree = vec![0usize; n];
            for &(s, t, _) in &edges {
                degree[s as usize] += 1;
                degree[t as usize] += 1;
            }
            let mut removed = false;
            for v in 0..n {
                if alive[v]
                    && ((opts.isolates && degree[v] == 0) || (opts.pendants && degree[v] == 1))
                {
                    alive[v] = false;
                    removed = true;
                }
            }
            if !removed {
                break;
            }
            edges.retain(|&(s, t, _)| alive[s as usize] && alive[t as usize]);
        }
    }

    let nodes = (0..n)
        .filter(|&v| alive[v])
        .map(|v| g.names[v].clone())
        .collect();
    let edges = edges
        .into_iter()
        .map(|(s, t, w)| ((g.names[s as usize].clone(), g.names[t as usize].clone()), w))
        .collect();
    SignedDigraph::assemble(nodes, edges)
}
