//! MAN triad census.
//!
//! The full census visits only connected triples: for every adjacent pair
//! `(v, u)` with `v < u` it walks the union of both neighbourhoods and counts
//! each connected triple once, at its smallest connected anchor. Dyadic
//! triads (012, 102) are counted in bulk per adjacent pair and 003 falls out
//! by subtraction from `C(n, 3)`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{NodeId, SignedDigraph};
use crate::par::{fold_anchors, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriadType {
    T003,
    T012,
    T102,
    T021D,
    T021U,
    T021C,
    T111D,
    T111U,
    T030T,
    T030C,
    T201,
    T120D,
    T120U,
    T120C,
    T210,
    T300,
}

impl TriadType {
    pub const ALL: [TriadType; 16] = [
        TriadType::T003,
        TriadType::T012,
        TriadType::T102,
        TriadType::T021D,
        TriadType::T021U,
        TriadType::T021C,
        TriadType::T111D,
        TriadType::T111U,
        TriadType::T030T,
        TriadType::T030C,
        TriadType::T201,
        TriadType::T120D,
        TriadType::T120U,
        TriadType::T120C,
        TriadType::T210,
        TriadType::T300,
    ];

    /// The four classes whose semicycles are all transitive, in report order.
    pub const TRANSITIVE: [TriadType; 4] = [
        TriadType::T030T,
        TriadType::T120D,
        TriadType::T120U,
        TriadType::T300,
    ];

    pub fn label(self) -> &'static str {
        match self {
            TriadType::T003 => "003",
            TriadType::T012 => "012",
            TriadType::T102 => "102",
            TriadType::T021D => "021D",
            TriadType::T021U => "021U",
            TriadType::T021C => "021C",
            TriadType::T111D => "111D",
            TriadType::T111U => "111U",
            TriadType::T030T => "030T",
            TriadType::T030C => "030C",
            TriadType::T201 => "201",
            TriadType::T120D => "120D",
            TriadType::T120U => "120U",
            TriadType::T120C => "120C",
            TriadType::T210 => "210",
            TriadType::T300 => "300",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_transitive(self) -> bool {
        self.transitive_index().is_some()
    }

    /// Position within [`TriadType::TRANSITIVE`].
    pub fn transitive_index(self) -> Option<usize> {
        match self {
            TriadType::T030T => Some(0),
            TriadType::T120D => Some(1),
            TriadType::T120U => Some(2),
            TriadType::T300 => Some(3),
            _ => None,
        }
    }

    /// Number of transitive semicycles a triad of this type contains.
    pub fn semicycle_count(self) -> Option<u32> {
        match self {
            TriadType::T030T => Some(1),
            TriadType::T120D | TriadType::T120U => Some(2),
            TriadType::T300 => Some(6),
            _ => None,
        }
    }
}

impl fmt::Display for TriadType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for TriadType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        TriadType::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown triad type `{s}`"))
    }
}

impl Serialize for TriadType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DyadKind {
    Mutual,
    Asymmetric,
    Null,
}

/// Orientation of an asymmetric dyad relative to the queried `(u, v)` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DyadState {
    pub kind: DyadKind,
    pub direction: Direction,
}

impl DyadState {
    pub fn between(g: &SignedDigraph, u: NodeId, v: NodeId) -> DyadState {
        let (kind, direction) = match (g.has_edge(u, v), g.has_edge(v, u)) {
            (true, true) => (DyadKind::Mutual, Direction::None),
            (true, false) => (DyadKind::Asymmetric, Direction::Forward),
            (false, true) => (DyadKind::Asymmetric, Direction::Backward),
            (false, false) => (DyadKind::Null, Direction::None),
        };
        DyadState { kind, direction }
    }
}

pub fn dyad_state(g: &SignedDigraph, u: &str, v: &str) -> Result<DyadState> {
    let (u, v) = (g.require(u)?, g.require(v)?);
    if u == v {
        return Err(Error::DuplicateNodes);
    }
    Ok(DyadState::between(g, u, v))
}

// Tricode bits for an ordered triple (a, b, c):
//   0: a->b  1: b->a  2: a->c  3: c->a  4: b->c  5: c->b
const AB: u8 = 1;
const BA: u8 = 2;
const AC: u8 = 4;
const CA: u8 = 8;
const BC: u8 = 16;
const CB: u8 = 32;

#[inline]
pub(crate) fn tricode(g: &SignedDigraph, a: NodeId, b: NodeId, c: NodeId) -> u8 {
    let mut code = 0;
    if g.has_edge(a, b) {
        code |= AB;
    }
    if g.has_edge(b, a) {
        code |= BA;
    }
    if g.has_edge(a, c) {
        code |= AC;
    }
    if g.has_edge(c, a) {
        code |= CA;
    }
    if g.has_edge(b, c) {
        code |= BC;
    }
    if g.has_edge(c, b) {
        code |= CB;
    }
    code
}

/// Classifies a tricode by dyad composition, then by how the asymmetric
/// edges sit relative to the other dyads.
const fn classify_code(code: u8) -> TriadType {
    // (forward bit, backward bit, first node, second node)
    let dyads = [(AB, BA, 0, 1), (AC, CA, 0, 2), (BC, CB, 1, 2)];
    let mut mutual = 0;
    let mut asym = 0;
    let mut asym_out = [0u8; 3];
    let mut asym_in = [0u8; 3];
    let mut in_mutual = [false; 3];
    let mut i = 0;
    while i < 3 {
        let (fwd, bwd, x, y) = dyads[i];
        let f = code & fwd != 0;
        let b = code & bwd != 0;
        if f && b {
            mutual += 1;
            in_mutual[x] = true;
            in_mutual[y] = true;
        } else if f {
            asym += 1;
            asym_out[x] += 1;
            asym_in[y] += 1;
        } else if b {
            asym += 1;
            asym_out[y] += 1;
            asym_in[x] += 1;
        }
        i += 1;
    }
    let out_star = asym_out[0] == 2 || asym_out[1] == 2 || asym_out[2] == 2;
    let in_star = asym_in[0] == 2 || asym_in[1] == 2 || asym_in[2] == 2;
    match (mutual, asym) {
        (0, 0) => TriadType::T003,
        (0, 1) => TriadType::T012,
        (1, 0) => TriadType::T102,
        (0, 2) => {
            if out_star {
                TriadType::T021D
            } else if in_star {
                TriadType::T021U
            } else {
                TriadType::T021C
            }
        }
        (1, 1) => {
            // the single asymmetric edge either points into the mutual dyad
            // (a<->b<-c) or away from it (a<->b->c)
            let mut head = 0;
            while asym_in[head] == 0 {
                head += 1;
            }
            if in_mutual[head] {
                TriadType::T111D
            } else {
                TriadType::T111U
            }
        }
        (0, 3) => {
            if out_star {
                TriadType::T030T
            } else {
                TriadType::T030C
            }
        }
        (2, 0) => TriadType::T201,
        (1, 2) => {
            if out_star {
                TriadType::T120D
            } else if in_star {
                TriadType::T120U
            } else {
                TriadType::T120C
            }
        }
        (2, 1) => TriadType::T210,
        _ => TriadType::T300,
    }
}

const fn build_table() -> [TriadType; 64] {
    let mut table = [TriadType::T003; 64];
    let mut code = 0;
    while code < 64 {
        table[code] = classify_code(code as u8);
        code += 1;
    }
    table
}

static TRIAD_TABLE: [TriadType; 64] = build_table();

#[inline]
pub(crate) fn type_of_code(code: u8) -> TriadType {
    TRIAD_TABLE[code as usize]
}

/// Classifies three distinct nodes given by id.
pub fn classify_ids(g: &SignedDigraph, nodes: [NodeId; 3]) -> Result<TriadType> {
    let [a, b, c] = nodes;
    if a == b || b == c || a == c {
        return Err(Error::DuplicateNodes);
    }
    Ok(type_of_code(tricode(g, a, b, c)))
}

/// Classifies three distinct nodes given by name into one of the 16 MAN classes.
pub fn classify_triad(g: &SignedDigraph, nodes: [&str; 3]) -> Result<TriadType> {
    let ids = [g.require(nodes[0])?, g.require(nodes[1])?, g.require(nodes[2])?];
    classify_ids(g, ids)
}

/// Counts per MAN class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CensusTable {
    counts: [u64; 16],
}

impl CensusTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, t: TriadType) -> u64 {
        self.counts[t.index()]
    }

    pub fn add(&mut self, t: TriadType, n: u64) {
        self.counts[t.index()] += n;
    }

    pub fn set(&mut self, t: TriadType, n: u64) {
        self.counts[t.index()] = n;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn as_array(&self) -> &[u64; 16] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (TriadType, u64)> + '_ {
        TriadType::ALL.into_iter().map(|t| (t, self.get(t)))
    }

    pub fn merge(mut self, other: &CensusTable) -> CensusTable {
        for (a, b) in self.counts.iter_mut().zip(other.counts.iter()) {
            *a += b;
        }
        self
    }

    /// `type,count` with all 16 rows, zero-filled.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("type,count\n");
        for (t, n) in self.iter() {
            out.push_str(&format!("{t},{n}\n"));
        }
        out
    }
}

impl Serialize for CensusTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(16))?;
        for (t, n) in self.iter() {
            map.serialize_entry(t.label(), &n)?;
        }
        map.end()
    }
}

pub fn choose3(n: u64) -> u64 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// Merges two sorted neighbour lists into `out`, skipping `skip_a` and `skip_b`.
fn union_into(out: &mut Vec<NodeId>, a: &[NodeId], b: &[NodeId], skip_a: NodeId, skip_b: NodeId) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = if j == b.len() || (i < a.len() && a[i] < b[j]) {
            i += 1;
            a[i - 1]
        } else if i == a.len() || b[j] < a[i] {
            j += 1;
            b[j - 1]
        } else {
            i += 1;
            j += 1;
            a[i - 1]
        };
        if next != skip_a && next != skip_b {
            out.push(next);
        }
    }
}

fn census_at(g: &SignedDigraph, v: NodeId, table: &mut CensusTable, scratch: &mut Vec<NodeId>) {
    let n = g.node_count() as u64;
    for &u in g.neighbors(v) {
        if u <= v {
            continue;
        }
        union_into(scratch, g.neighbors(v), g.neighbors(u), u, v);
        let dyadic = if g.has_edge(v, u) && g.has_edge(u, v) {
            TriadType::T102
        } else {
            TriadType::T012
        };
        table.add(dyadic, n - scratch.len() as u64 - 2);
        for &w in scratch.iter() {
            if u < w || (v < w && w < u && !g.adjacent(v, w)) {
                table.add(type_of_code(tricode(g, v, u, w)), 1);
            }
        }
    }
}

pub fn full_census(g: &SignedDigraph) -> CensusTable {
    full_census_with(g, Strategy::default())
}

pub fn full_census_with(g: &SignedDigraph, strategy: Strategy) -> CensusTable {
    let n = g.node_count();
    if n < 3 {
        return CensusTable::new();
    }
    let (mut table, _) = fold_anchors(
        n,
        strategy,
        || (CensusTable::new(), Vec::new()),
        |(mut table, mut scratch), v| {
            census_at(g, v, &mut table, &mut scratch);
            (table, scratch)
        },
        |(a, s), (b, _)| (a.merge(&b), s),
    );
    let connected = table.total();
    table.set(TriadType::T003, choose3(n as u64) - connected);
    table
}

/// A connected triad of one of the four transitive types, nodes ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitiveTriad {
    pub nodes: [NodeId; 3],
    pub kind: TriadType,
}

/// Calls `visit` for every triangle `a < b < c` in the undirected projection
/// anchored at `a`, in ascending `(b, c)` order.
pub(crate) fn for_each_triangle_at<F: FnMut([NodeId; 3])>(g: &SignedDigraph, a: NodeId, mut visit: F) {
    let na = g.neighbors(a);
    let start = na.partition_point(|&x| x <= a);
    let higher = &na[start..];
    for (k, &b) in higher.iter().enumerate() {
        let rest_a = &higher[k + 1..];
        let nb = g.neighbors(b);
        let rest_b = &nb[nb.partition_point(|&x| x <= b)..];
        let (mut i, mut j) = (0, 0);
        while i < rest_a.len() && j < rest_b.len() {
            match rest_a[i].cmp(&rest_b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    visit([a, b, rest_a[i]]);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

/// Calls `visit` for each transitive triad anchored at its smallest node `a`.
pub(crate) fn for_each_transitive_at<F: FnMut(TransitiveTriad)>(
    g: &SignedDigraph,
    a: NodeId,
    mut visit: F,
) {
    for_each_triangle_at(g, a, |[a, b, c]| {
        let kind = type_of_code(tricode(g, a, b, c));
        if kind.is_transitive() {
            visit(TransitiveTriad {
                nodes: [a, b, c],
                kind,
            });
        }
    });
}

/// Streams every 030T, 120D, 120U and 300 triad exactly once, ordered by
/// sorted node triple. Only one anchor's worth of triads is buffered at a time.
pub fn enumerate_transitive_triads(g: &SignedDigraph) -> impl Iterator<Item = TransitiveTriad> + '_ {
    g.node_ids().flat_map(move |a| {
        let mut found = Vec::new();
        for_each_transitive_at(g, a, |t| found.push(t));
        found.into_iter()
    })
}
