//! Exact graph invariants and a verification harness for chromatic bounds
//! of the form `chi <= (omega + Delta + 1)/2 + t` and their behavior under
//! joins, greedy partial colorings and matchings.
//!
//! Everything is exact: invariants are complete searches, thresholds are
//! half-integers stored as doubled integers, and bound values are exact
//! rationals. Verdicts distinguish `holds`, `vacuous` and `violated` so
//! restrictive hypotheses are visible in every aggregate.

pub mod bounds;
pub mod cancel;
pub mod colorings;
pub mod corpus;
pub mod graph;
pub mod graph6;
pub mod half;
pub mod harness;
pub mod invariants;
pub mod matching;
pub mod report;
pub mod search;

pub use bounds::{
    check_statement, reed_report, CheckOutcome, GraphCtx, ReedReport, StatementId, StatementInput,
    Verdict,
};
pub use cancel::CancelToken;
pub use colorings::{
    greedy_r_partial_coloring, min_missed_r_coloring, partial_coloring_bounds, theorem3_bound,
    MinMissedColoring, PartialColoring,
};
pub use corpus::{named, CorpusSpec};
pub use graph::{Graph, JoinFactorization, VertexSet, MAX_ORDER};
pub use graph6::{from_graph6, to_graph6};
pub use half::Half;
pub use invariants::InvariantRecord;
pub use matching::{maximum_matching, tutte_witness, TutteWitness};
