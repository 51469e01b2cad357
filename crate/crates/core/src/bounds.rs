//! The R_t membership algebra and the statement catalog: every claim the
//! harness can test, expressed as a hypothesis predicate plus a conclusion
//! predicate over exact invariants. All arithmetic is integral or exact
//! rational; `vacuous` is a first-class verdict so restrictive hypotheses
//! never masquerade as coverage.

use crate::colorings::{
    greedy_r_partial_coloring, lemma11_bound_parts, lemma12_bound_parts, min_missed_r_coloring,
    theorem3_bound_parts, MinMissedColoring, PartialColoring, MIN_MISSED_EXACT_MAX,
};
use crate::graph::{Graph, VertexSet};
use crate::half::{rational_string, Half};
use crate::invariants::{
    chromatic_number, degree_stats, is_vertex_critical, max_clique, max_independent_set,
    InvariantRecord,
};
use crate::matching::{has_one_factor, is_matching_covered, matching_number};
use num_rational::Rational64;
use std::cell::OnceCell;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Half-integer window scanned for the statements quantified over t.
/// Excess values of desk-scale graphs live well inside [-2, 2].
pub const T_WINDOW_HALVES: i64 = 4;

/// Known diagonal Ramsey numbers r(m,m) for m = 1..=4. Established values
/// from the standard small-Ramsey-number surveys; r(5,5) is open, which is
/// why every lookup beyond m = 4 is an error.
pub const RAMSEY_DIAGONAL: [usize; 4] = [1, 2, 6, 18];

pub fn ramsey_diagonal(m: usize) -> Result<usize, CatalogError> {
    if (1..=4).contains(&m) {
        Ok(RAMSEY_DIAGONAL[m - 1])
    } else {
        Err(CatalogError::RamseyRange { m })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown statement id {0:?}")]
    UnknownStatement(String),
    #[error("statement {id} expects a {expected} input")]
    ArityMismatch { id: StatementId, expected: &'static str },
    #[error("r({m},{m}) is not known exactly; m must be in 1..=4")]
    RamseyRange { m: usize },
    #[error("statement {id} requires the parameter m")]
    MissingM { id: StatementId },
}

// ---------------------------------------------------------------------------
// Reed excess
// ---------------------------------------------------------------------------

/// Exact position of a graph in the R_t hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReedReport {
    /// `chi - (omega + Delta + 1)/2`.
    pub excess: Half,
    /// The ceiled form `chi <= ceil((omega + Delta + 1)/2)`.
    pub conjecture_ok: bool,
    /// Smallest half-integer t with excess <= t; equals the excess.
    pub tightest_t: Half,
}

impl ReedReport {
    pub fn from_parts(chi: usize, omega: usize, delta: usize) -> ReedReport {
        let base = (omega + delta + 1) as i64;
        let excess = Half::from_halves(2 * chi as i64 - base);
        ReedReport {
            excess,
            conjecture_ok: (chi as i64) <= (base + 1) / 2,
            tightest_t: excess,
        }
    }

    /// Membership in R_t: excess <= t, non-ceiled by definition.
    pub fn member_of(&self, t: Half) -> bool {
        self.excess <= t
    }
}

pub fn reed_report(g: &Graph) -> ReedReport {
    let ctx = GraphCtx::new(g);
    ctx.reed_report()
}

// ---------------------------------------------------------------------------
// Lazy per-graph invariant context
// ---------------------------------------------------------------------------

/// Caches the invariants of one graph so a batch of statement checks
/// computes each exactly once, and the expensive ones only on demand.
pub struct GraphCtx<'a> {
    g: &'a Graph,
    co: OnceCell<Graph>,
    clique: OnceCell<VertexSet>,
    independent: OnceCell<VertexSet>,
    chi: OnceCell<usize>,
    nu: OnceCell<usize>,
    nu_co: OnceCell<usize>,
    degrees: OnceCell<(usize, usize)>,
    critical: OnceCell<bool>,
    min_missed3: OnceCell<Option<MinMissedColoring>>,
}

impl<'a> GraphCtx<'a> {
    pub fn new(g: &'a Graph) -> GraphCtx<'a> {
        GraphCtx {
            g,
            co: OnceCell::new(),
            clique: OnceCell::new(),
            independent: OnceCell::new(),
            chi: OnceCell::new(),
            nu: OnceCell::new(),
            nu_co: OnceCell::new(),
            degrees: OnceCell::new(),
            critical: OnceCell::new(),
            min_missed3: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    pub fn n(&self) -> usize {
        self.g.order()
    }

    pub fn complement(&self) -> &Graph {
        self.co.get_or_init(|| self.g.complement())
    }

    pub fn max_clique(&self) -> VertexSet {
        *self.clique.get_or_init(|| max_clique(self.g))
    }

    pub fn omega(&self) -> usize {
        self.max_clique().len()
    }

    pub fn max_independent_set(&self) -> VertexSet {
        *self.independent.get_or_init(|| max_independent_set(self.g))
    }

    pub fn alpha(&self) -> usize {
        self.max_independent_set().len()
    }

    pub fn chi(&self) -> usize {
        *self.chi.get_or_init(|| chromatic_number(self.g))
    }

    pub fn nu(&self) -> usize {
        *self.nu.get_or_init(|| matching_number(self.g))
    }

    pub fn nu_complement(&self) -> usize {
        *self.nu_co.get_or_init(|| matching_number(self.complement()))
    }

    pub fn delta(&self) -> usize {
        self.degrees().0
    }

    pub fn delta_min(&self) -> usize {
        self.degrees().1
    }

    pub fn degrees(&self) -> (usize, usize) {
        *self.degrees.get_or_init(|| degree_stats(self.g))
    }

    pub fn vertex_critical(&self) -> bool {
        *self.critical.get_or_init(|| is_vertex_critical(self.g))
    }

    /// `None` when the order exceeds the exact minimum-missed threshold.
    pub fn min_missed3(&self) -> Option<&MinMissedColoring> {
        self.min_missed3
            .get_or_init(|| min_missed_r_coloring(self.g, 3, false).ok())
            .as_ref()
    }

    /// Twice the Reed excess.
    pub fn excess_halves(&self) -> i64 {
        2 * self.chi() as i64 - (self.omega() + self.delta() + 1) as i64
    }

    pub fn excess(&self) -> Half {
        Half::from_halves(self.excess_halves())
    }

    pub fn reed_report(&self) -> ReedReport {
        ReedReport::from_parts(self.chi(), self.omega(), self.delta())
    }

    pub fn record(&self) -> InvariantRecord {
        InvariantRecord {
            chromatic: self.chi(),
            clique: self.omega(),
            independence: self.alpha(),
            max_degree: self.delta(),
            min_degree: self.delta_min(),
            matching: self.nu(),
        }
    }
}

// ---------------------------------------------------------------------------
// Statement catalog
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementId {
    Cor4,
    Cor5,
    Prop6,
    Lemma7,
    Lemma8,
    Prop9,
    Thm3,
    Lemma11,
    Lemma12,
    Prop13,
    Prop14,
    Cor15,
    Cor16,
    Lemma17,
    Prop18,
    Cor19,
    Lemma20,
    Lemma20Remark,
    Lemma21,
    Lemma22,
    Prop24,
    Cor25,
    Cor27,
    Prop28,
    Lemma30,
    Reed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    Single,
    Pair,
    Tuple,
}

pub struct StatementInfo {
    pub id: StatementId,
    pub arity: Arity,
    /// The tested claim over the exact invariants.
    pub description: &'static str,
    /// Whether holding instances carry a rational slack (bound minus value).
    pub has_slack: bool,
}

pub const CATALOG: &[StatementInfo] = &[
    StatementInfo { id: StatementId::Thm3, arity: Arity::Single, description: "chi <= (omega + n - sum|I_j| + 2m - 1)/2 for sampled nonempty collections of disjoint independent sets", has_slack: true },
    StatementInfo { id: StatementId::Cor4, arity: Arity::Single, description: "chi <= (omega + n - alpha + 1)/2", has_slack: true },
    StatementInfo { id: StatementId::Cor5, arity: Arity::Single, description: "chi <= (omega + n)/2", has_slack: true },
    StatementInfo { id: StatementId::Prop6, arity: Arity::Pair, description: "excess(A+B) <= tightest_t(B), so joining anything to an R_t member stays in R_t", has_slack: true },
    StatementInfo { id: StatementId::Lemma7, arity: Arity::Single, description: "chi > ceil(n/2) implies some X with co(G-X) disconnected and chi(G-X) = chi(G)", has_slack: false },
    StatementInfo { id: StatementId::Lemma8, arity: Arity::Single, description: "vertex critical with chi > ceil(n/2) implies co(G) disconnected", has_slack: false },
    StatementInfo { id: StatementId::Prop9, arity: Arity::Single, description: "alpha <= 2 implies excess <= 1/2", has_slack: true },
    StatementInfo { id: StatementId::Lemma11, arity: Arity::Single, description: "non-complete with an r-greedy M: chi <= (omega + n - (r-2)|M| - 1)/2 for r in 2..=4", has_slack: true },
    StatementInfo { id: StatementId::Lemma12, arity: Arity::Single, description: "minimum-missed 3-greedy M: chi <= (omega + Delta + 1)/2 + (|M|+1)/2", has_slack: true },
    StatementInfo { id: StatementId::Prop13, arity: Arity::Single, description: "chi <= (omega + (n + Delta + 1)/2)/2", has_slack: true },
    StatementInfo { id: StatementId::Prop14, arity: Arity::Pair, description: "excess(A+B) <= 0", has_slack: true },
    StatementInfo { id: StatementId::Cor15, arity: Arity::Single, description: "chi > ceil(n/2) implies excess <= 0", has_slack: true },
    StatementInfo { id: StatementId::Cor16, arity: Arity::Single, description: "for half-integer t >= 0: excess > t implies Delta + 1 <= n - 2t - omega", has_slack: true },
    StatementInfo { id: StatementId::Lemma17, arity: Arity::Single, description: "alpha <= 2 implies omega^2 + omega >= n", has_slack: true },
    StatementInfo { id: StatementId::Prop18, arity: Arity::Single, description: "Delta >= n - sqrt(n + 2 alpha + 1) implies excess <= 1/2", has_slack: true },
    StatementInfo { id: StatementId::Cor19, arity: Arity::Single, description: "Delta >= n - sqrt(n + 7) implies excess <= 1/2", has_slack: true },
    StatementInfo { id: StatementId::Lemma20, arity: Arity::Single, description: "for half-integer t: excess > t implies Delta + 1 <= n - 2t - alpha", has_slack: true },
    StatementInfo { id: StatementId::Lemma20Remark, arity: Arity::Single, description: "for half-integer t >= 1/2: excess > t implies alpha >= 3 and Delta + 1 <= n - 2t - 3", has_slack: true },
    StatementInfo { id: StatementId::Lemma21, arity: Arity::Tuple, description: "k >= 2 factors with Delta_i + 1 <= n_i - 3: excess(join) <= 2 - k", has_slack: true },
    StatementInfo { id: StatementId::Lemma22, arity: Arity::Tuple, description: "k >= 2 non-5-cycle factors with Delta_i + 1 <= n_i - 2: excess(join) <= 2 - k", has_slack: true },
    StatementInfo { id: StatementId::Prop24, arity: Arity::Single, description: "nu(co(G)) < floor(n/2) implies excess <= 0", has_slack: true },
    StatementInfo { id: StatementId::Cor25, arity: Arity::Single, description: "even n with excess > 0 implies co(G) has a 1-factor", has_slack: false },
    StatementInfo { id: StatementId::Cor27, arity: Arity::Single, description: "even n with excess > 1 implies co(G) is matching covered", has_slack: false },
    StatementInfo { id: StatementId::Prop28, arity: Arity::Tuple, description: "k >= 2 factors with Delta_i + 1 <= n_i - m, small factors in R_{1/2}: excess(join) <= (m-1)(1 - k/2)", has_slack: true },
    StatementInfo { id: StatementId::Lemma30, arity: Arity::Tuple, description: "k >= 2 non-complete factors: excess(join) <= 1 - k/2", has_slack: true },
    StatementInfo { id: StatementId::Reed, arity: Arity::Single, description: "chi <= ceil((omega + Delta + 1)/2)", has_slack: true },
];

impl StatementId {
    pub fn info(self) -> &'static StatementInfo {
        CATALOG.iter().find(|s| s.id == self).expect("catalog covers every id")
    }

    pub fn arity(self) -> Arity {
        self.info().arity
    }

    pub fn all() -> Vec<StatementId> {
        CATALOG.iter().map(|s| s.id).collect()
    }

    pub fn all_single() -> Vec<StatementId> {
        CATALOG.iter().filter(|s| s.arity == Arity::Single).map(|s| s.id).collect()
    }

    pub fn all_pair() -> Vec<StatementId> {
        CATALOG.iter().filter(|s| s.arity == Arity::Pair).map(|s| s.id).collect()
    }

    pub fn all_tuple() -> Vec<StatementId> {
        CATALOG.iter().filter(|s| s.arity == Arity::Tuple).map(|s| s.id).collect()
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

macro_rules! statement_names {
    ($(($id:ident, $name:literal)),* $(,)?) => {
        impl StatementId {
            pub fn name(self) -> &'static str {
                match self {
                    $(StatementId::$id => $name,)*
                }
            }
        }
        impl FromStr for StatementId {
            type Err = CatalogError;
            fn from_str(s: &str) -> Result<StatementId, CatalogError> {
                match s {
                    $($name => Ok(StatementId::$id),)*
                    _ => Err(CatalogError::UnknownStatement(s.to_string())),
                }
            }
        }
    };
}

statement_names![
    (Thm3, "thm3"),
    (Cor4, "cor4"),
    (Cor5, "cor5"),
    (Prop6, "prop6"),
    (Lemma7, "lemma7"),
    (Lemma8, "lemma8"),
    (Prop9, "prop9"),
    (Lemma11, "lemma11"),
    (Lemma12, "lemma12"),
    (Prop13, "prop13"),
    (Prop14, "prop14"),
    (Cor15, "cor15"),
    (Cor16, "cor16"),
    (Lemma17, "lemma17"),
    (Prop18, "prop18"),
    (Cor19, "cor19"),
    (Lemma20, "lemma20"),
    (Lemma20Remark, "lemma20_remark"),
    (Lemma21, "lemma21"),
    (Lemma22, "lemma22"),
    (Prop24, "prop24"),
    (Cor25, "cor25"),
    (Cor27, "cor27"),
    (Prop28, "prop28"),
    (Lemma30, "lemma30"),
    (Reed, "reed"),
];

// ---------------------------------------------------------------------------
// Verdicts and outcomes
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Vacuous,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Vacuous => "vacuous",
            Verdict::Violated => "violated",
        })
    }
}

/// Lightweight result of one statement on one input: verdict plus the
/// rational slack (conclusion bound minus attained value) when it holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eval {
    pub verdict: Verdict,
    pub slack: Option<Rational64>,
}

impl Eval {
    fn vacuous() -> Eval {
        Eval { verdict: Verdict::Vacuous, slack: None }
    }

    fn from_slack(slack: Rational64) -> Eval {
        if slack >= Rational64::from_integer(0) {
            Eval { verdict: Verdict::Holds, slack: Some(slack) }
        } else {
            Eval { verdict: Verdict::Violated, slack: Some(slack) }
        }
    }

    fn from_bool(ok: bool) -> Eval {
        Eval { verdict: if ok { Verdict::Holds } else { Verdict::Violated }, slack: None }
    }
}

/// Everything needed to recompute a verdict independently: the inputs as
/// graphs plus the named intermediate values.
#[derive(Clone, Debug, Default)]
pub struct Witness {
    pub graphs: Vec<(String, Graph)>,
    pub values: Vec<(String, String)>,
}

impl Witness {
    fn graph(mut self, role: &str, g: &Graph) -> Witness {
        self.graphs.push((role.to_string(), g.clone()));
        self
    }

    fn value(mut self, key: &str, value: impl ToString) -> Witness {
        self.values.push((key.to_string(), value.to_string()));
        self
    }
}

/// A fully materialized check result.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub statement: StatementId,
    pub verdict: Verdict,
    pub slack: Option<Rational64>,
    pub witness: Witness,
    pub notes: String,
}

/// Inputs by arity. Tuple statements take the factor list plus the m
/// parameter where applicable.
pub enum StatementInput<'a> {
    Single(&'a Graph),
    Pair(&'a Graph, &'a Graph),
    Tuple(&'a [Graph], Option<usize>),
}

/// Checks one catalog statement against one input, with a full witness.
pub fn check_statement(id: StatementId, input: StatementInput) -> Result<CheckOutcome, CatalogError> {
    match (id.arity(), input) {
        (Arity::Single, StatementInput::Single(g)) => {
            let ctx = GraphCtx::new(g);
            let eval = eval_single(id, &ctx);
            Ok(CheckOutcome {
                statement: id,
                verdict: eval.verdict,
                slack: eval.slack,
                witness: single_witness(id, &ctx),
                notes: single_notes(id, &ctx),
            })
        }
        (Arity::Pair, StatementInput::Pair(a, b)) => {
            let stats = JoinStats::compute(&[a.clone(), b.clone()]);
            let eval = eval_pair(id, &stats);
            Ok(CheckOutcome {
                statement: id,
                verdict: eval.verdict,
                slack: eval.slack,
                witness: stats.witness(),
                notes: String::new(),
            })
        }
        (Arity::Tuple, StatementInput::Tuple(parts, m)) => {
            if id == StatementId::Prop28 {
                let m = m.ok_or(CatalogError::MissingM { id })?;
                ramsey_diagonal(m)?;
            }
            let stats = JoinStats::compute(parts);
            let eval = eval_tuple(id, &stats, m)?;
            Ok(CheckOutcome {
                statement: id,
                verdict: eval.verdict,
                slack: eval.slack,
                witness: stats.witness(),
                notes: String::new(),
            })
        }
        (Arity::Single, _) => Err(CatalogError::ArityMismatch { id, expected: "single graph" }),
        (Arity::Pair, _) => Err(CatalogError::ArityMismatch { id, expected: "graph pair" }),
        (Arity::Tuple, _) => Err(CatalogError::ArityMismatch { id, expected: "graph tuple" }),
    }
}

// ---------------------------------------------------------------------------
// Single-graph statements
// ---------------------------------------------------------------------------

/// Evaluates a single-graph statement against a cached invariant context.
///
/// Panics if `id` is not a single-graph statement.
pub fn eval_single(id: StatementId, c: &GraphCtx) -> Eval {
    let n = c.n() as i64;
    match id {
        StatementId::Cor4 => {
            let bound = (c.omega() + c.n() + 1) as i64 - c.alpha() as i64;
            Eval::from_slack(Rational64::new(bound - 2 * c.chi() as i64, 2))
        }
        StatementId::Cor5 => {
            let bound = (c.omega() + c.n()) as i64;
            Eval::from_slack(Rational64::new(bound - 2 * c.chi() as i64, 2))
        }
        StatementId::Prop9 => {
            if c.alpha() > 2 {
                return Eval::vacuous();
            }
            Eval::from_slack(Rational64::new(1 - c.excess_halves(), 2))
        }
        StatementId::Lemma17 => {
            if c.alpha() > 2 {
                return Eval::vacuous();
            }
            let omega = c.omega() as i64;
            Eval::from_slack(Rational64::from_integer(omega * omega + omega - n))
        }
        StatementId::Prop13 => {
            let bound = 2 * c.omega() as i64 + n + c.delta() as i64 + 1;
            Eval::from_slack(Rational64::new(bound - 4 * c.chi() as i64, 4))
        }
        StatementId::Prop18 => {
            let gap = n - c.delta() as i64;
            if gap > 0 && gap * gap > n + 2 * c.alpha() as i64 + 1 {
                return Eval::vacuous();
            }
            Eval::from_slack(Rational64::new(1 - c.excess_halves(), 2))
        }
        StatementId::Cor19 => {
            let gap = n - c.delta() as i64;
            if gap > 0 && gap * gap > n + 7 {
                return Eval::vacuous();
            }
            Eval::from_slack(Rational64::new(1 - c.excess_halves(), 2))
        }
        StatementId::Cor15 => {
            if (c.chi() as i64) <= (n + 1) / 2 {
                return Eval::vacuous();
            }
            Eval::from_slack(Rational64::new(-c.excess_halves(), 2))
        }
        StatementId::Prop24 => {
            if (c.nu_complement() as i64) >= n / 2 {
                return Eval::vacuous();
            }
            Eval::from_slack(Rational64::new(-c.excess_halves(), 2))
        }
        StatementId::Cor25 => {
            if c.n() % 2 != 0 || c.excess_halves() <= 0 {
                return Eval::vacuous();
            }
            Eval::from_bool(has_one_factor(c.complement()))
        }
        StatementId::Cor27 => {
            if c.n() % 2 != 0 || c.excess_halves() <= 2 {
                return Eval::vacuous();
            }
            Eval::from_bool(is_matching_covered(c.complement()))
        }
        StatementId::Cor16 => {
            quantified_over_t(c, 0, T_WINDOW_HALVES, |c, h| {
                Rational64::from_integer(n - h - c.omega() as i64 - (c.delta() as i64 + 1))
            })
        }
        StatementId::Lemma20 => {
            quantified_over_t(c, -T_WINDOW_HALVES, T_WINDOW_HALVES, |c, h| {
                Rational64::from_integer(n - h - c.alpha() as i64 - (c.delta() as i64 + 1))
            })
        }
        StatementId::Lemma20Remark => {
            quantified_over_t(c, 1, T_WINDOW_HALVES, |c, h| {
                let degree_slack = n - h - 3 - (c.delta() as i64 + 1);
                if c.alpha() < 3 {
                    // conclusion already false; surface it as negative slack
                    Rational64::from_integer(degree_slack.min(-1))
                } else {
                    Rational64::from_integer(degree_slack)
                }
            })
        }
        StatementId::Reed => {
            let base = (c.omega() + c.delta() + 1) as i64;
            Eval::from_slack(Rational64::from_integer((base + 1) / 2 - c.chi() as i64))
        }
        StatementId::Thm3 => {
            let mut worst: Option<Rational64> = None;
            for m in thm3_samples(c) {
                debug_assert!(m.is_valid_for(c.graph()));
                let bound = theorem3_bound_parts(c.omega(), c.n(), &m);
                let slack = bound - Rational64::from_integer(c.chi() as i64);
                worst = Some(worst.map_or(slack, |w| w.min(slack)));
            }
            Eval::from_slack(worst.expect("at least the empty collection is sampled"))
        }
        StatementId::Lemma11 => {
            if c.graph().is_complete() {
                return Eval::vacuous();
            }
            let mut worst: Option<Rational64> = None;
            for r in 2..=4usize {
                let m = greedy_r_partial_coloring(c.graph(), r);
                let bound = lemma11_bound_parts(c.omega(), c.n(), &m);
                let slack = bound - Rational64::from_integer(c.chi() as i64);
                worst = Some(worst.map_or(slack, |w| w.min(slack)));
            }
            Eval::from_slack(worst.expect("three floors sampled"))
        }
        StatementId::Lemma12 => {
            let Some(mm) = c.min_missed3() else {
                return Eval::vacuous();
            };
            let bound = lemma12_bound_parts(c.omega(), c.delta(), mm.coloring.class_count());
            Eval::from_slack(bound - Rational64::from_integer(c.chi() as i64))
        }
        StatementId::Lemma7 => match lemma7_witness(c) {
            Lemma7Outcome::Vacuous => Eval::vacuous(),
            Lemma7Outcome::Witness(_) => Eval { verdict: Verdict::Holds, slack: None },
            Lemma7Outcome::SearchExhausted => Eval { verdict: Verdict::Violated, slack: None },
        },
        StatementId::Lemma8 => {
            if (c.chi() as i64) <= (n + 1) / 2 || !c.vertex_critical() {
                return Eval::vacuous();
            }
            Eval::from_bool(!c.complement().is_connected())
        }
        other => panic!("{other} is not a single-graph statement"),
    }
}

/// The hypothesis `G not in R_t` scanned over half-integer t in
/// `[lo, hi]` halves; the conclusion slack comes from `slack_at`.
fn quantified_over_t(
    c: &GraphCtx,
    lo: i64,
    hi: i64,
    slack_at: impl Fn(&GraphCtx, i64) -> Rational64,
) -> Eval {
    let excess = c.excess_halves();
    let mut worst: Option<Rational64> = None;
    for h in lo..=hi {
        if excess > h {
            let slack = slack_at(c, h);
            worst = Some(worst.map_or(slack, |w| w.min(slack)));
        }
    }
    match worst {
        None => Eval::vacuous(),
        Some(w) => Eval::from_slack(w),
    }
}

/// Deterministic partial-coloring samples for the independent-set bound:
/// the all-singletons partition plus the exact-size greedy collections for
/// floors 2 and 3 and the certified minimum-missed 3-greedy when
/// available. The bound presumes at least one class (with none it reads
/// chi <= (omega + n - 1)/2, false for complete graphs), so collections
/// that came out empty are dropped; the singleton partition never is.
fn thm3_samples(c: &GraphCtx) -> Vec<PartialColoring> {
    let mut out = vec![greedy_r_partial_coloring(c.graph(), 1)];
    out.push(greedy_r_partial_coloring(c.graph(), 2));
    out.push(greedy_r_partial_coloring(c.graph(), 3));
    if let Some(mm) = c.min_missed3() {
        out.push(mm.coloring.clone());
    }
    out.retain(|m| m.class_count() >= 1);
    out
}

pub enum Lemma7Outcome {
    /// chi <= ceil(n/2); the statement does not apply.
    Vacuous,
    /// An X with co(G - X) disconnected and chi(G - X) = chi(G), found by
    /// ascending |X| and lexicographic vertex order within each size.
    Witness(VertexSet),
    /// No such X exists; the claim fails on this graph.
    SearchExhausted,
}

pub fn lemma7_witness_graph(g: &Graph) -> Lemma7Outcome {
    lemma7_witness(&GraphCtx::new(g))
}

pub fn lemma7_witness(c: &GraphCtx) -> Lemma7Outcome {
    let n = c.n();
    if (c.chi() as i64) <= (n as i64 + 1) / 2 {
        return Lemma7Outcome::Vacuous;
    }
    let chi = c.chi();
    // G - X must keep at least two vertices for its complement to be
    // disconnected
    for size in 0..=n.saturating_sub(2) {
        let mut found = None;
        for_each_combination(n, size, &mut |x| {
            if found.is_some() {
                return;
            }
            let keep = c.graph().vertices().difference(x);
            let h = c.graph().induced_subgraph(keep);
            if !h.complement().is_connected() && chromatic_number(&h) == chi {
                found = Some(x);
            }
        });
        if let Some(x) = found {
            return Lemma7Outcome::Witness(x);
        }
    }
    Lemma7Outcome::SearchExhausted
}

/// All size-k subsets of `0..n` in lexicographic vertex-list order.
fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(VertexSet)) {
    fn rec(n: usize, k: usize, next: usize, acc: VertexSet, f: &mut impl FnMut(VertexSet)) {
        if k == 0 {
            f(acc);
            return;
        }
        for v in next..=n - k {
            rec(n, k - 1, v + 1, acc.with(v), f);
        }
    }
    rec(n, k, 0, VertexSet::EMPTY, f);
}

pub fn lemma8_check(g: &Graph) -> CheckOutcome {
    check_statement(StatementId::Lemma8, StatementInput::Single(g)).expect("arity is single")
}

/// Witness for a single-graph outcome: the graph, its record, and the
/// values the verdict was computed from.
pub fn single_witness(id: StatementId, c: &GraphCtx) -> Witness {
    let mut w = Witness::default()
        .graph("graph", c.graph())
        .value("n", c.n())
        .value("chi", c.chi())
        .value("omega", c.omega())
        .value("alpha", c.alpha())
        .value("max_degree", c.delta())
        .value("excess", rational_string(c.excess().to_rational()));
    match id {
        StatementId::Prop24 | StatementId::Cor25 | StatementId::Cor27 => {
            w = w.value("nu_complement", c.nu_complement());
        }
        StatementId::Lemma12 => {
            if let Some(mm) = c.min_missed3() {
                w = w
                    .value("classes", format_classes(&mm.coloring))
                    .value("missed", mm.coloring.missed.to_string());
            }
        }
        StatementId::Lemma7 => {
            if let Lemma7Outcome::Witness(x) = lemma7_witness(c) {
                w = w.value("removed", x.to_string());
            }
        }
        StatementId::Lemma8 => {
            w = w.value("vertex_critical", c.vertex_critical());
        }
        _ => {}
    }
    w
}

pub fn single_notes(id: StatementId, c: &GraphCtx) -> String {
    match id {
        StatementId::Cor27 if c.n() % 2 == 0 && c.excess_halves() > 2 && c.complement().edge_count() == 0 => {
            "edgeless complement is not matching covered by convention".to_string()
        }
        StatementId::Lemma12 if c.min_missed3().is_none() => {
            format!("order {} exceeds the exact minimum-missed threshold {MIN_MISSED_EXACT_MAX}", c.n())
        }
        _ => String::new(),
    }
}

fn format_classes(m: &PartialColoring) -> String {
    let parts: Vec<String> = m.classes.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(" "))
}

// ---------------------------------------------------------------------------
// Pair and tuple statements
// ---------------------------------------------------------------------------

/// Invariants of a prospective join and its factors, all computed directly
/// on the materialized graphs rather than through the join identities.
#[derive(Clone, Debug)]
pub struct JoinStats {
    pub factors: Vec<Graph>,
    pub factor_records: Vec<FactorStats>,
    pub join: Graph,
    pub join_chi: usize,
    pub join_omega: usize,
    pub join_delta: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct FactorStats {
    pub n: usize,
    pub chi: usize,
    pub omega: usize,
    pub delta: usize,
    pub complete: bool,
    pub five_cycle: bool,
}

impl FactorStats {
    pub fn compute(g: &Graph) -> FactorStats {
        let (delta, _) = degree_stats(g);
        FactorStats {
            n: g.order(),
            chi: chromatic_number(g),
            omega: crate::invariants::clique_number(g),
            delta,
            complete: g.is_complete(),
            five_cycle: g.is_five_cycle(),
        }
    }

    /// Twice the factor's excess.
    pub fn excess_halves(&self) -> i64 {
        2 * self.chi as i64 - (self.omega + self.delta + 1) as i64
    }
}

impl JoinStats {
    /// Joins the parts (a single part passes through unchanged) and
    /// computes exact invariants of the result.
    pub fn compute(parts: &[Graph]) -> JoinStats {
        assert!(!parts.is_empty());
        let join = if parts.len() == 1 { parts[0].clone() } else { Graph::join(parts) };
        let factor_records = parts.iter().map(FactorStats::compute).collect();
        let (join_delta, _) = degree_stats(&join);
        JoinStats {
            factors: parts.to_vec(),
            factor_records,
            join_chi: chromatic_number(&join),
            join_omega: crate::invariants::clique_number(&join),
            join_delta,
            join,
        }
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }

    /// Twice the join's excess.
    pub fn join_excess_halves(&self) -> i64 {
        2 * self.join_chi as i64 - (self.join_omega + self.join_delta + 1) as i64
    }

    pub fn witness(&self) -> Witness {
        let mut w = Witness::default();
        for (i, g) in self.factors.iter().enumerate() {
            w = w.graph(&format!("factor_{i}"), g);
        }
        w = w.graph("join", &self.join);
        for (i, f) in self.factor_records.iter().enumerate() {
            w = w.value(
                &format!("factor_{i}_stats"),
                format!("n={} chi={} omega={} delta={}", f.n, f.chi, f.omega, f.delta),
            );
        }
        w.value(
            "join_stats",
            format!(
                "n={} chi={} omega={} delta={}",
                self.join.order(),
                self.join_chi,
                self.join_omega,
                self.join_delta
            ),
        )
        .value(
            "join_excess",
            rational_string(Half::from_halves(self.join_excess_halves()).to_rational()),
        )
    }
}

/// Evaluates a pair statement. Panics if `id` is not a pair statement.
pub fn eval_pair(id: StatementId, stats: &JoinStats) -> Eval {
    assert_eq!(stats.k(), 2, "pair statements take exactly two graphs");
    match id {
        StatementId::Prop6 => {
            // t is the tightest threshold admitting the second factor
            let t = stats.factor_records[1].excess_halves();
            Eval::from_slack(Rational64::new(t - stats.join_excess_halves(), 2))
        }
        StatementId::Prop14 => Eval::from_slack(Rational64::new(-stats.join_excess_halves(), 2)),
        other => panic!("{other} is not a pair statement"),
    }
}

/// Evaluates a tuple statement; `m` is required for the Ramsey-guarded
/// generalization. Panics if `id` is not a tuple statement.
pub fn eval_tuple(id: StatementId, stats: &JoinStats, m: Option<usize>) -> Result<Eval, CatalogError> {
    let k = stats.k() as i64;
    if k < 2 {
        return Ok(Eval::vacuous());
    }
    let target_halves = match id {
        StatementId::Lemma21 => {
            if !stats.factor_records.iter().all(|f| f.delta as i64 + 1 <= f.n as i64 - 3) {
                return Ok(Eval::vacuous());
            }
            2 * (2 - k)
        }
        StatementId::Lemma22 => {
            return Ok(eval_lemma22(stats, true));
        }
        StatementId::Lemma30 => {
            if stats.factor_records.iter().any(|f| f.complete) {
                return Ok(Eval::vacuous());
            }
            2 - k
        }
        StatementId::Prop28 => {
            let m = m.ok_or(CatalogError::MissingM { id })?;
            let r_mm = ramsey_diagonal(m)? as i64;
            let degree_ok = stats
                .factor_records
                .iter()
                .all(|f| f.delta as i64 + 1 <= f.n as i64 - m as i64);
            // small factors must already sit in R_{1/2}
            let small_ok = stats
                .factor_records
                .iter()
                .all(|f| (f.n as i64) >= r_mm || f.excess_halves() <= 1);
            if !degree_ok || !small_ok {
                return Ok(Eval::vacuous());
            }
            (m as i64 - 1) * (2 - k)
        }
        other => panic!("{other} is not a tuple statement"),
    };
    Ok(Eval::from_slack(Rational64::new(
        target_halves - stats.join_excess_halves(),
        2,
    )))
}

/// The weakened-hypothesis join bound, with the 5-cycle exclusion
/// switchable so the exclusion's necessity can be probed directly.
pub fn eval_lemma22(stats: &JoinStats, exclude_five_cycles: bool) -> Eval {
    let k = stats.k() as i64;
    if k < 2 {
        return Eval::vacuous();
    }
    let hyp = stats.factor_records.iter().all(|f| {
        (f.delta as i64 + 1 <= f.n as i64 - 2) && !(exclude_five_cycles && f.five_cycle)
    });
    if !hyp {
        return Eval::vacuous();
    }
    Eval::from_slack(Rational64::new(2 * (2 - k) - stats.join_excess_halves(), 2))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named;

    fn g(name: &str) -> Graph {
        named(name).unwrap()
    }

    fn single(id: StatementId, graph: &Graph) -> CheckOutcome {
        check_statement(id, StatementInput::Single(graph)).unwrap()
    }

    #[test]
    fn reed_report_complete_graphs() {
        for n in 1..=8 {
            let r = reed_report(&g(&format!("complete({n})")));
            assert_eq!(r.excess, Half::ZERO);
            assert!(r.conjecture_ok);
            assert_eq!(r.tightest_t, Half::ZERO);
        }
    }

    #[test]
    fn reed_report_c5() {
        let r = reed_report(&g("cycle(5)"));
        assert_eq!(r.excess, Half::HALF);
        assert!(r.conjecture_ok);
        assert_eq!(r.tightest_t, Half::HALF);
        assert!(r.member_of(Half::HALF));
        assert!(!r.member_of(Half::ZERO));
    }

    #[test]
    fn reed_report_join_of_two_c5() {
        let j = Graph::join(&[g("cycle(5)"), g("cycle(5)")]);
        let r = reed_report(&j);
        assert!(r.excess <= Half::ZERO);
    }

    #[test]
    fn cor4_on_c5_is_tight() {
        let out = single(StatementId::Cor4, &g("cycle(5)"));
        assert_eq!(out.verdict, Verdict::Holds);
        assert_eq!(out.slack, Some(Rational64::from_integer(0)));
    }

    #[test]
    fn prop14_on_two_c5() {
        let out = check_statement(
            StatementId::Prop14,
            StatementInput::Pair(&g("cycle(5)"), &g("cycle(5)")),
        )
        .unwrap();
        assert_eq!(out.verdict, Verdict::Holds);
        assert_eq!(out.slack, Some(Rational64::from_integer(0)));
    }

    #[test]
    fn lemma21_k1_is_vacuous() {
        let out = check_statement(
            StatementId::Lemma21,
            StatementInput::Tuple(&[g("complete(2)")], None),
        )
        .unwrap();
        assert_eq!(out.verdict, Verdict::Vacuous);
    }

    #[test]
    fn lemma17_on_complete_graphs() {
        for n in 1..=7 {
            let out = single(StatementId::Lemma17, &g(&format!("complete({n})")));
            assert_eq!(out.verdict, Verdict::Holds);
        }
    }

    #[test]
    fn lemma7_cases() {
        assert!(matches!(
            lemma7_witness_graph(&g("complete(4)")),
            Lemma7Outcome::Witness(x) if x.is_empty()
        ));
        assert!(matches!(lemma7_witness_graph(&g("cycle(5)")), Lemma7Outcome::Vacuous));
        let j = Graph::join(&[g("complete(3)"), g("cycle(5)")]);
        assert!(matches!(lemma7_witness_graph(&j), Lemma7Outcome::Witness(x) if x.is_empty()));
    }

    #[test]
    fn lemma8_cases() {
        assert_eq!(lemma8_check(&g("complete(5)")).verdict, Verdict::Holds);
        assert_eq!(lemma8_check(&g("cycle(5)")).verdict, Verdict::Vacuous);
        assert_eq!(lemma8_check(&g("cycle(7)")).verdict, Verdict::Vacuous);
    }

    #[test]
    fn lemma22_exclusion_gates_c5() {
        let triple = vec![g("cycle(5)"), g("cycle(5)"), g("cycle(5)")];
        let out = check_statement(StatementId::Lemma22, StatementInput::Tuple(&triple, None)).unwrap();
        assert_eq!(out.verdict, Verdict::Vacuous);
        // with the exclusion disabled the triple of 5-cycles violates the bound
        let stats = JoinStats::compute(&triple);
        let injected = eval_lemma22(&stats, false);
        assert_eq!(injected.verdict, Verdict::Violated);
        assert_eq!(injected.slack, Some(Rational64::new(-1, 2)));
    }

    #[test]
    fn prop28_requires_known_ramsey_number() {
        let pair = vec![g("empty(6)"), g("empty(6)")];
        let err = check_statement(StatementId::Prop28, StatementInput::Tuple(&pair, Some(5)));
        assert_eq!(err.unwrap_err(), CatalogError::RamseyRange { m: 5 });
        let missing = check_statement(StatementId::Prop28, StatementInput::Tuple(&pair, None));
        assert_eq!(missing.unwrap_err(), CatalogError::MissingM { id: StatementId::Prop28 });
    }

    #[test]
    fn statement_ids_round_trip() {
        for info in CATALOG {
            let parsed: StatementId = info.id.name().parse().unwrap();
            assert_eq!(parsed, info.id);
        }
        assert!("nonsense".parse::<StatementId>().is_err());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let err = check_statement(StatementId::Cor4, StatementInput::Pair(&g("cycle(5)"), &g("cycle(5)")));
        assert!(matches!(err, Err(CatalogError::ArityMismatch { .. })));
    }

    #[test]
    fn ramsey_table() {
        assert_eq!(ramsey_diagonal(1).unwrap(), 1);
        assert_eq!(ramsey_diagonal(2).unwrap(), 2);
        assert_eq!(ramsey_diagonal(3).unwrap(), 6);
        assert_eq!(ramsey_diagonal(4).unwrap(), 18);
        assert!(ramsey_diagonal(0).is_err());
        assert!(ramsey_diagonal(5).is_err());
    }
}
