//! Machine-readable reports. Field order is fixed by the struct layout and
//! all maps are ordered, so a report serializes to byte-identical JSON
//! across reruns and regardless of worker count. Nothing time-dependent is
//! ever written into a report.

use crate::bounds::{CheckOutcome, StatementId, Verdict, Witness};
use crate::corpus::CorpusSpec;
use crate::graph::VertexSet;
use crate::graph6::graph6_or_placeholder;
use crate::half::rational_string;
use crate::invariants::InvariantRecord;
use num_rational::Rational64;
use serde::ser::Serializer;
use serde::Serialize;
use std::collections::BTreeMap;

/// Bumped whenever the report layout changes; reruns compare byte-equal
/// only at equal versions.
pub const REPORT_VERSION: &str = "1";

/// Fixed shard width for corpus scans. Shard boundaries depend only on the
/// corpus, never on the worker count, so merged reports are reproducible
/// at any parallelism.
pub const SHARD_SIZE: u64 = 4096;

pub fn serialize_vertex_set<S: Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(set.iter())
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    /// Role-tagged graph6 encodings of every input graph.
    pub graphs: BTreeMap<String, String>,
    /// Exact invariant records keyed like `graphs`.
    pub records: BTreeMap<String, InvariantRecord>,
    /// Named intermediate values; rationals as `p/q` strings.
    pub values: BTreeMap<String, String>,
    pub notes: String,
}

impl WitnessRecord {
    pub fn build(witness: &Witness, notes: &str) -> WitnessRecord {
        let mut graphs = BTreeMap::new();
        let mut records = BTreeMap::new();
        for (role, g) in &witness.graphs {
            graphs.insert(role.clone(), graph6_or_placeholder(g));
            records.insert(role.clone(), InvariantRecord::compute(g));
        }
        let values = witness
            .values
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        WitnessRecord { graphs, records, values, notes: notes.to_string() }
    }

    pub fn from_outcome(outcome: &CheckOutcome) -> WitnessRecord {
        WitnessRecord::build(&outcome.witness, &outcome.notes)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ViolationEntry {
    /// Position of the input in its stream (corpus index or sample index).
    pub index: u64,
    /// Provenance of the input, e.g. `mask=…` or `index=…`.
    pub source: String,
    pub witness: WitnessRecord,
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessEntry {
    /// Minimum observed slack as a `p/q` string.
    pub min_slack: String,
    pub index: u64,
    pub source: String,
    pub witness: WitnessRecord,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct StatementTally {
    pub holds: u64,
    pub vacuous: u64,
    pub violated: u64,
    pub violations: Vec<ViolationEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tightness: Option<TightnessEntry>,
}

impl StatementTally {
    pub fn total(&self) -> u64 {
        self.holds + self.vacuous + self.violated
    }

    pub fn bump(&mut self, verdict: Verdict) {
        match verdict {
            Verdict::Holds => self.holds += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Violated => self.violated += 1,
        }
    }

    /// Order-independent merge: counts add, violations concatenate in the
    /// caller's (shard) order, tightness keeps the smaller slack with ties
    /// broken by input index.
    pub fn merge(&mut self, other: StatementTally) {
        self.holds += other.holds;
        self.vacuous += other.vacuous;
        self.violated += other.violated;
        self.violations.extend(other.violations);
        self.tightness = match (self.tightness.take(), other.tightness) {
            (None, t) => t,
            (t, None) => t,
            (Some(a), Some(b)) => {
                let ra = parse_slack(&a.min_slack);
                let rb = parse_slack(&b.min_slack);
                Some(if (rb, b.index) < (ra, a.index) { b } else { a })
            }
        };
    }
}

fn parse_slack(s: &str) -> Rational64 {
    let (p, q) = s.split_once('/').expect("slack strings are p/q");
    Rational64::new(p.parse().expect("slack numerator"), q.parse().expect("slack denominator"))
}

pub fn slack_string(r: Rational64) -> String {
    rational_string(r)
}

/// Summary of skipped lines when a graph6 file is read in skip-and-log mode.
#[derive(Clone, Debug, Serialize)]
pub struct SkippedLine {
    pub line: usize,
    pub error: String,
}

/// The machine report for a verification or search run.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub command: String,
    pub corpus: CorpusSpec,
    /// Cardinality of the single-graph corpus.
    pub corpus_size: u64,
    pub shard_size: u64,
    pub shards: u64,
    /// Sample counts for the pair and tuple statements, when any ran.
    pub pair_samples: u64,
    pub tuple_samples: u64,
    pub sample_seed: u64,
    pub tuple_k: usize,
    pub statements: BTreeMap<String, StatementTally>,
    pub skipped_lines: Vec<SkippedLine>,
    /// True when the run stopped early (cancellation or fail-fast).
    pub incomplete: bool,
}

impl VerificationReport {
    pub fn total_violations(&self) -> u64 {
        self.statements.values().map(|t| t.violated).sum()
    }

    pub fn tally(&self, id: StatementId) -> Option<&StatementTally> {
        self.statements.get(id.name())
    }

    /// Canonical byte encoding; reruns with identical inputs and version
    /// produce identical bytes.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Flat per-graph invariant table.
    pub fn csv_header() -> &'static str {
        "graph6,n,chi,omega,alpha,max_degree,min_degree,nu,excess\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_merge_keeps_smaller_slack() {
        let witness = WitnessRecord {
            graphs: BTreeMap::new(),
            records: BTreeMap::new(),
            values: BTreeMap::new(),
            notes: String::new(),
        };
        let mut a = StatementTally {
            holds: 1,
            tightness: Some(TightnessEntry {
                min_slack: "1/2".into(),
                index: 0,
                source: "mask=0".into(),
                witness: witness.clone(),
            }),
            ..Default::default()
        };
        let b = StatementTally {
            holds: 2,
            tightness: Some(TightnessEntry {
                min_slack: "0/1".into(),
                index: 5,
                source: "mask=5".into(),
                witness,
            }),
            ..Default::default()
        };
        a.merge(b);
        assert_eq!(a.holds, 3);
        assert_eq!(a.tightness.unwrap().min_slack, "0/1");
    }
}
