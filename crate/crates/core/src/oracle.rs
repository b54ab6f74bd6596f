//! Naive reference implementations for cross-checking census and balance on
//! small graphs.
//!
//! Nothing here reuses the production classifier. Triples are classified by
//! brute-force canonical form against hand-written class representatives,
//! every one of the `C(n, 3)` triples is visited, and fractions are summed
//! as exact rationals.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_rational::Ratio;

use crate::balance::{BalanceReport, SignCensus, SignPattern, TypeBalance};
use crate::census::{CensusTable, TriadType};
use crate::error::{Error, Result};
use crate::graph::SignedDigraph;

pub const DEFAULT_CAP: usize = 50;

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// One labelled digraph per class, as local edge lists on nodes 0, 1, 2.
const REPRESENTATIVES: [(TriadType, &[(usize, usize)]); 16] = [
    (TriadType::T003, &[]),
    (TriadType::T012, &[(0, 1)]),
    (TriadType::T102, &[(0, 1), (1, 0)]),
    (TriadType::T021D, &[(0, 1), (0, 2)]),
    (TriadType::T021U, &[(1, 0), (2, 0)]),
    (TriadType::T021C, &[(0, 1), (1, 2)]),
    (TriadType::T111D, &[(0, 1), (1, 0), (2, 1)]),
    (TriadType::T111U, &[(0, 1), (1, 0), (1, 2)]),
    (TriadType::T030T, &[(0, 1), (1, 2), (0, 2)]),
    (TriadType::T030C, &[(0, 1), (1, 2), (2, 0)]),
    (TriadType::T201, &[(0, 1), (1, 0), (0, 2), (2, 0)]),
    (TriadType::T120D, &[(0, 1), (1, 0), (2, 0), (2, 1)]),
    (TriadType::T120U, &[(0, 1), (1, 0), (0, 2), (1, 2)]),
    (TriadType::T120C, &[(0, 1), (1, 0), (0, 2), (2, 1)]),
    (TriadType::T210, &[(0, 1), (1, 0), (0, 2), (2, 0), (1, 2)]),
    (TriadType::T300, &[(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]),
];

type Local = [[bool; 3]; 3];

fn encode(m: &Local) -> u16 {
    m.iter()
        .flatten()
        .enumerate()
        .filter(|(_, &edge)| edge)
        .fold(0u16, |code, (bit, _)| code | 1 << bit)
}

fn canonical(m: &Local) -> u16 {
    PERMUTATIONS
        .iter()
        .map(|p| {
            let mut q = [[false; 3]; 3];
            for x in 0..3 {
                for y in 0..3 {
                    q[p[x]][p[y]] = m[x][y];
                }
            }
            encode(&q)
        })
        .min()
        .unwrap()
}

fn class_table() -> &'static HashMap<u16, TriadType> {
    static TABLE: OnceLock<HashMap<u16, TriadType>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = HashMap::new();
        for (kind, edges) in REPRESENTATIVES {
            let mut m = [[false; 3]; 3];
            for &(x, y) in edges {
                m[x][y] = true;
            }
            let prev = table.insert(canonical(&m), kind);
            assert!(prev.is_none(), "representatives must be pairwise non-isomorphic");
        }
        table
    })
}

/// Dense sign matrix: 0 for no edge, otherwise +1 / -1.
struct Dense {
    n: usize,
    sign: Vec<i8>,
}

impl Dense {
    fn new(g: &SignedDigraph, cap: usize) -> Result<Self> {
        let n = g.node_count();
        if n > cap {
            return Err(Error::OracleCap { nodes: n, cap });
        }
        let mut sign = vec![0i8; n * n];
        for (s, t, w) in g.edges() {
            if s != t {
                sign[s as usize * n + t as usize] = if w > 0.0 { 1 } else { -1 };
            }
        }
        Ok(Dense { n, sign })
    }

    fn at(&self, x: usize, y: usize) -> i8 {
        self.sign[x * self.n + y]
    }

    fn classify(&self, t: [usize; 3]) -> TriadType {
        let mut m = [[false; 3]; 3];
        for x in 0..3 {
            for y in 0..3 {
                m[x][y] = x != y && self.at(t[x], t[y]) != 0;
            }
        }
        class_table()[&canonical(&m)]
    }

    fn triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k]))
        })
    }
}

pub fn brute_force_census(g: &SignedDigraph) -> Result<CensusTable> {
    brute_force_census_capped(g, DEFAULT_CAP)
}

pub fn brute_force_census_capped(g: &SignedDigraph, cap: usize) -> Result<CensusTable> {
    let dense = Dense::new(g, cap)?;
    let mut table = CensusTable::new();
    for t in dense.triples() {
        table.add(dense.classify(t), 1);
    }
    Ok(table)
}

pub fn brute_force_balance(g: &SignedDigraph) -> Result<BalanceReport> {
    brute_force_balance_capped(g, DEFAULT_CAP)
}

pub fn brute_force_balance_capped(g: &SignedDigraph, cap: usize) -> Result<BalanceReport> {
    let dense = Dense::new(g, cap)?;
    let mut tallies: HashMap<TriadType, (TypeBalance, Ratio<u64>)> = HashMap::new();
    let mut signs = SignCensus::default();

    for t in dense.triples() {
        let kind = dense.classify(t);
        if !matches!(
            kind,
            TriadType::T030T | TriadType::T120D | TriadType::T120U | TriadType::T300
        ) {
            continue;
        }
        let (mut positive, mut total) = (0u64, 0u64);
        for p in PERMUTATIONS {
            let (a, b, c) = (t[p[0]], t[p[1]], t[p[2]]);
            let (ab, bc, ac) = (dense.at(a, b), dense.at(b, c), dense.at(a, c));
            if ab == 0 || bc == 0 || ac == 0 {
                continue;
            }
            total += 1;
            if ab * bc * ac > 0 {
                positive += 1;
            }
            let negatives = [ab, bc, ac].iter().filter(|&&s| s < 0).count();
            signs.add(SignPattern::ALL[negatives]);
        }
        let expected = match kind {
            TriadType::T030T => 1,
            TriadType::T300 => 6,
            _ => 2,
        };
        assert_eq!(total, expected, "{kind} triad with {total} semicycles");

        let (tally, sum) = tallies
            .entry(kind)
            .or_insert_with(|| (TypeBalance::empty(kind), Ratio::from_integer(0)));
        tally.triad_count += 1;
        if positive == total {
            tally.cb_count += 1;
        } else if positive == 0 {
            tally.ci_count += 1;
        } else {
            tally.pb_count += 1;
        }
        if positive > 0 {
            tally.nonzero_count += 1;
        } else {
            tally.zero_count += 1;
        }
        *sum += Ratio::new(positive, total);
    }

    let types = tallies.into_values().map(|(mut tally, sum)| {
        let sixths = sum * 6;
        assert!(sixths.is_integer());
        tally.positive_sixths = sixths.to_integer();
        tally
    });
    Ok(BalanceReport::from_types(types, signs))
}

/// Network balance of `report` as an exact rational: the mean of
/// `cb + fractional parts` over the non-empty types.
pub fn exact_overall(report: &BalanceReport) -> Option<Ratio<u128>> {
    let ratios: Vec<Ratio<u128>> = report
        .per_type
        .iter()
        .filter(|t| t.triad_count > 0)
        .map(|t| Ratio::new(t.positive_sixths as u128, 6 * t.triad_count as u128))
        .collect();
    if ratios.is_empty() {
        return None;
    }
    let k = ratios.len() as u128;
    Some(ratios.into_iter().sum::<Ratio<u128>>() / k)
}

pub fn ratio_to_f64(r: &Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
