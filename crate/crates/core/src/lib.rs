//! Structural balance for signed directed networks.
//!
//! A triad is scored by its transitive semicycles: ordered triples
//! `(a, b, c)` with edges `a->b`, `b->c` and `a->c`. Only the four MAN
//! classes made entirely of such semicycles (030T, 120D, 120U, 300) are
//! scored. Classes that mix transitive and cyclic structure (111D/U, 201,
//! 120C, 210) are left out.
//!
//! ```
//! use triad_balance::{build_graph, network_balance, AggregationPolicy, SignedEdge};
//!
//! let edges = [("a", "b", 1.0), ("b", "c", -1.0), ("a", "c", -1.0)]
//!     .map(|(s, t, w)| SignedEdge::new(s, t, w).unwrap());
//! let g = build_graph(edges, AggregationPolicy::Mean).unwrap();
//! assert_eq!(network_balance(&g).overall(), Some(1.0));
//! ```

pub mod balance;
pub mod census;
pub mod error;
pub mod generate;
pub mod graph;
pub mod labeler;
pub mod metrics;
pub mod oracle;
pub mod par;
pub mod records;
pub mod report;

pub use balance::{
    network_balance, network_balance_with, semicycle_sign, sign_census, transitive_semicycles,
    triad_balance, triad_balances, type_balance_ratio, BalanceClass, BalanceReport, Semicycle,
    SignCensus, SignPattern, TriadBalance, TypeBalance,
};
pub use census::{
    classify_triad, dyad_state, enumerate_transitive_triads, full_census, full_census_with,
    CensusTable, DyadKind, DyadState, TransitiveTriad, TriadType,
};
pub use error::{Error, Result};
pub use graph::{
    build_graph, prune, AggregationPolicy, GraphBuilder, NodeId, PruneOptions, Sign, SignedDigraph,
    SignedEdge,
};
pub use labeler::{
    label_survey_edges, label_text_edges, score_document, score_sentence, tokenize, Lexicon,
    TextLabeler,
};
pub use metrics::{descriptive_stats, NetworkStats};
pub use par::{with_threads, Strategy};
pub use records::{drop_neutral, AliasMap, Payload, RawEdgeRecord};
