//! Triadic balance from transitive semicycles.
//!
//! A semicycle is an ordered triple `(a, b, c)` with edges `a->b`, `b->c`
//! and `a->c`; it is balanced when the product of those three signs is
//! positive. A transitive triad's balance is the fraction of its semicycles
//! that are balanced. A type's ratio is the mean of its triads' fractions,
//! and the network figure is the mean over the types that occur.
//!
//! Every triad fraction has denominator 1, 2 or 6, so fractions are
//! accumulated exactly as integer sixths and only turned into floats on
//! output.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::census::{for_each_transitive_at, tricode, type_of_code, TriadType};
use crate::error::{Error, Result};
use crate::graph::{NodeId, Sign, SignedDigraph};
use crate::par::{fold_anchors, Strategy};

/// Orderings of a sorted triple, lexicographic.
const ORDERINGS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Semicycle {
    /// `(a, b, c)`
    pub nodes: [NodeId; 3],
    /// Signs of `a->b`, `b->c`, `a->c`.
    pub signs: [Sign; 3],
}

impl Semicycle {
    pub fn sign(&self) -> Sign {
        self.signs[0] * self.signs[1] * self.signs[2]
    }

    pub fn pattern(&self) -> SignPattern {
        let negatives = self.signs.iter().filter(|s| !s.is_positive()).count();
        SignPattern::from_negatives(negatives)
    }
}

/// Product of the three edge signs.
pub fn semicycle_sign(s: &Semicycle) -> Sign {
    s.sign()
}

/// Sign multiset of a semicycle, ignoring which edge carries which sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignPattern {
    AllPositive,
    OneNegative,
    TwoNegative,
    AllNegative,
}

impl SignPattern {
    pub const ALL: [SignPattern; 4] = [
        SignPattern::AllPositive,
        SignPattern::OneNegative,
        SignPattern::TwoNegative,
        SignPattern::AllNegative,
    ];

    fn from_negatives(n: usize) -> SignPattern {
        SignPattern::ALL[n]
    }

    pub fn label(self) -> &'static str {
        match self {
            SignPattern::AllPositive => "+++",
            SignPattern::OneNegative => "++-",
            SignPattern::TwoNegative => "+--",
            SignPattern::AllNegative => "---",
        }
    }

    pub fn is_balanced(self) -> bool {
        matches!(self, SignPattern::AllPositive | SignPattern::TwoNegative)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BalanceClass {
    CompletelyBalanced,
    PartiallyBalanced,
    CompletelyImbalanced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriadBalance {
    pub triad: [NodeId; 3],
    pub kind: TriadType,
    positive: u32,
    total: u32,
}

impl TriadBalance {
    /// `positive` balanced semicycles out of the count fixed by `kind`.
    pub fn new(triad: [NodeId; 3], kind: TriadType, positive: u32) -> Result<Self> {
        let total = kind.semicycle_count().ok_or(Error::NotTransitive(kind))?;
        assert!(positive <= total, "{positive} positive of {total} semicycles");
        Ok(TriadBalance {
            triad,
            kind,
            positive,
            total,
        })
    }

    pub fn positive_count(&self) -> u32 {
        self.positive
    }

    pub fn total_count(&self) -> u32 {
        self.total
    }

    pub fn negative_count(&self) -> u32 {
        self.total - self.positive
    }

    pub fn fraction(&self) -> f64 {
        self.positive as f64 / self.total as f64
    }

    /// The fraction in lowest terms.
    pub fn fraction_exact(&self) -> (u32, u32) {
        let g = self.positive.gcd(&self.total);
        (self.positive / g, self.total / g)
    }

    /// The fraction measured in sixths; exact for every transitive type.
    pub fn sixths(&self) -> u64 {
        (self.positive * (6 / self.total)) as u64
    }

    pub fn class(&self) -> BalanceClass {
        if self.positive == self.total {
            BalanceClass::CompletelyBalanced
        } else if self.positive == 0 {
            BalanceClass::CompletelyImbalanced
        } else {
            BalanceClass::PartiallyBalanced
        }
    }
}

fn sorted(mut triad: [NodeId; 3]) -> [NodeId; 3] {
    triad.sort_unstable();
    triad
}

/// Runs `visit` on each transitive semicycle of a sorted triple.
fn visit_semicycles<F: FnMut(Semicycle)>(g: &SignedDigraph, triad: [NodeId; 3], mut visit: F) {
    for [i, j, k] in ORDERINGS {
        let (a, b, c) = (triad[i], triad[j], triad[k]);
        if let (Some(ab), Some(bc), Some(ac)) = (g.sign(a, b), g.sign(b, c), g.sign(a, c)) {
            visit(Semicycle {
                nodes: [a, b, c],
                signs: [ab, bc, ac],
            });
        }
    }
}

fn check_type(g: &SignedDigraph, triad: [NodeId; 3], kind: TriadType) -> Result<[NodeId; 3]> {
    if !kind.is_transitive() {
        return Err(Error::NotTransitive(kind));
    }
    let t = sorted(triad);
    if t[0] == t[1] || t[1] == t[2] {
        return Err(Error::DuplicateNodes);
    }
    let actual = type_of_code(tricode(g, t[0], t[1], t[2]));
    if actual != kind {
        return Err(Error::TypeMismatch {
            expected: kind,
            actual,
        });
    }
    Ok(t)
}

/// The 1, 2, 2 or 6 transitive semicycles of a 030T, 120D, 120U or 300
/// triad, in lexicographic order of `(a, b, c)`.
pub fn transitive_semicycles(
    g: &SignedDigraph,
    triad: [NodeId; 3],
    kind: TriadType,
) -> Result<Vec<Semicycle>> {
    let t = check_type(g, triad, kind)?;
    let mut out = Vec::with_capacity(6);
    visit_semicycles(g, t, |s| out.push(s));
    Ok(out)
}

pub fn triad_balance(g: &SignedDigraph, triad: [NodeId; 3], kind: TriadType) -> Result<TriadBalance> {
    let t = check_type(g, triad, kind)?;
    let mut positive = 0;
    visit_semicycles(g, t, |s| positive += s.sign().is_positive() as u32);
    TriadBalance::new(t, kind, positive)
}

/// Per-type tallies. Merging two tallies is plain addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeBalance {
    pub kind: TriadType,
    pub triad_count: u64,
    pub cb_count: u64,
    pub pb_count: u64,
    pub ci_count: u64,
    /// Triads with at least one balanced semicycle.
    pub nonzero_count: u64,
    pub zero_count: u64,
    /// Sum of member fractions, in sixths.
    pub positive_sixths: u64,
}

impl TypeBalance {
    pub fn empty(kind: TriadType) -> Self {
        TypeBalance {
            kind,
            triad_count: 0,
            cb_count: 0,
            pb_count: 0,
            ci_count: 0,
            nonzero_count: 0,
            zero_count: 0,
            positive_sixths: 0,
        }
    }

    pub fn add(&mut self, b: &TriadBalance) {
        debug_assert_eq!(b.kind, self.kind);
        self.triad_count += 1;
        match b.class() {
            BalanceClass::CompletelyBalanced => self.cb_count += 1,
            BalanceClass::PartiallyBalanced => self.pb_count += 1,
            BalanceClass::CompletelyImbalanced => self.ci_count += 1,
        }
        if b.positive_count() > 0 {
            self.nonzero_count += 1;
        } else {
            self.zero_count += 1;
        }
        self.positive_sixths += b.sixths();
    }

    pub fn merge(mut self, other: &TypeBalance) -> Self {
        debug_assert_eq!(self.kind, other.kind);
        self.triad_count += other.triad_count;
        self.cb_count += other.cb_count;
        self.pb_count += other.pb_count;
        self.ci_count += other.ci_count;
        self.nonzero_count += other.nonzero_count;
        self.zero_count += other.zero_count;
        self.positive_sixths += other.positive_sixths;
        self
    }

    /// Mean of member fractions; `None` for a type with no triads.
    pub fn ratio(&self) -> Option<f64> {
        (self.triad_count > 0)
            .then(|| self.positive_sixths as f64 / (6 * self.triad_count) as f64)
    }

    /// [`TypeBalance::ratio`] as a reduced fraction.
    pub fn ratio_exact(&self) -> Option<(u64, u64)> {
        if self.triad_count == 0 {
            return None;
        }
        let den = 6 * self.triad_count;
        let g = self.positive_sixths.gcd(&den);
        Some((self.positive_sixths / g, den / g))
    }

    /// Share of triads with any balanced semicycle.
    pub fn nonzero_share(&self) -> Option<f64> {
        (self.triad_count > 0).then(|| self.nonzero_count as f64 / self.triad_count as f64)
    }
}

/// Tallies balances of a single type.
pub fn type_balance_ratio(balances: &[TriadBalance], kind: TriadType) -> Result<TypeBalance> {
    let mut tally = TypeBalance::empty(kind);
    for b in balances {
        if b.kind != kind {
            return Err(Error::MixedTypes {
                first: kind,
                other: b.kind,
            });
        }
        tally.add(b);
    }
    Ok(tally)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SignCensus {
    counts: [u64; 4],
}

impl SignCensus {
    pub fn add(&mut self, p: SignPattern) {
        self.counts[p as usize] += 1;
    }

    pub fn count(&self, p: SignPattern) -> u64 {
        self.counts[p as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn ratio(&self, p: SignPattern) -> Option<f64> {
        let total = self.total();
        (total > 0).then(|| self.count(p) as f64 / total as f64)
    }

    pub fn merge(mut self, other: &SignCensus) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (SignPattern, u64)> + '_ {
        SignPattern::ALL.into_iter().map(|p| (p, self.count(p)))
    }
}

pub fn sign_census<'a, I>(semicycles: I) -> SignCensus
where
    I: IntoIterator<Item = &'a Semicycle>,
{
    let mut census = SignCensus::default();
    for s in semicycles {
        census.add(s.pattern());
    }
    census
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BalanceReport {
    /// Indexed like [`TriadType::TRANSITIVE`].
    pub per_type: [TypeBalance; 4],
    pub signs: SignCensus,
}

impl Default for BalanceReport {
    fn default() -> Self {
        BalanceReport {
            per_type: TriadType::TRANSITIVE.map(TypeBalance::empty),
            signs: SignCensus::default(),
        }
    }
}

impl BalanceReport {
    /// Builds a report from per-type tallies; missing types stay empty.
    pub fn from_types<I: IntoIterator<Item = TypeBalance>>(types: I, signs: SignCensus) -> Self {
        let mut report = BalanceReport {
            signs,
            ..BalanceReport::default()
        };
        for t in types {
            let i = t.kind.transitive_index().expect("transitive type");
            report.per_type[i] = report.per_type[i].merge(&t);
        }
        report
    }

    pub fn get(&self, kind: TriadType) -> Option<&TypeBalance> {
        kind.transitive_index().map(|i| &self.per_type[i])
    }

    pub fn add_triad(&mut self, b: &TriadBalance) {
        let i = b.kind.transitive_index().expect("transitive type");
        self.per_type[i].add(b);
    }

    pub fn merge(mut self, other: &BalanceReport) -> Self {
        for (a, b) in self.per_type.iter_mut().zip(other.per_type.iter()) {
            *a = a.merge(b);
        }
        self.signs = self.signs.merge(&other.signs);
        self
    }

    /// Mean of the type ratios over types that occur; `None` when no
    /// transitive triad exists.
    pub fn overall(&self) -> Option<f64> {
        let ratios: Vec<f64> = self.per_type.iter().filter_map(TypeBalance::ratio).collect();
        (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64)
    }

    pub fn triad_count(&self) -> u64 {
        self.per_type.iter().map(|t| t.triad_count).sum()
    }
}

fn scan_triad(g: &SignedDigraph, triad: [NodeId; 3], kind: TriadType, report: &mut BalanceReport) {
    let mut positive = 0;
    visit_semicycles(g, triad, |s| {
        positive += s.sign().is_positive() as u32;
        report.signs.add(s.pattern());
    });
    let b = TriadBalance::new(triad, kind, positive).expect("transitive type");
    report.add_triad(&b);
}

pub fn network_balance(g: &SignedDigraph) -> BalanceReport {
    network_balance_with(g, Strategy::default())
}

pub fn network_balance_with(g: &SignedDigraph, strategy: Strategy) -> BalanceReport {
    fold_anchors(
        g.node_count(),
        strategy,
        BalanceReport::default,
        |mut report, a| {
            for_each_transitive_at(g, a, |t| scan_triad(g, t.nodes, t.kind, &mut report));
            report
        },
        |a, b| a.merge(&b),
    )
}

/// Streams the balance of every transitive triad in canonical order.
pub fn triad_balances(g: &SignedDigraph) -> impl Iterator<Item = TriadBalance> + '_ {
    crate::census::enumerate_transitive_triads(g).map(move |t| {
        let mut positive = 0;
        visit_semicycles(g, t.nodes, |s| positive += s.sign().is_positive() as u32);
        TriadBalance::new(t.nodes, t.kind, positive).expect("transitive type")
    })
}
