//! Runs the statement catalog over corpora: sharded scans for the
//! single-graph statements, seeded sampling for the pair and tuple
//! statements. Shard boundaries depend only on the corpus, results merge
//! in shard order, and nothing in a report depends on the worker count.

use crate::bounds::{
    eval_pair, eval_single, eval_tuple, single_notes, single_witness, Arity, CatalogError,
    FactorStats, GraphCtx, JoinStats, StatementId, Verdict,
};
use crate::cancel::CancelToken;
use crate::corpus::{gnp_graph, Corpus, CorpusError, CorpusSpec, Counter};
use crate::graph::Graph;
use crate::report::{
    SkippedLine, StatementTally, TightnessEntry, VerificationReport, ViolationEntry,
    WitnessRecord, REPORT_VERSION, SHARD_SIZE,
};
use num_rational::Rational64;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("no factor meeting the {statement} hypothesis was found within {attempts} attempts (slot {slot})")]
    SamplingExhausted { statement: StatementId, slot: usize, attempts: u64 },
    #[error("failed to build worker pool: {0}")]
    Pool(String),
}

pub type Progress = Arc<dyn Fn(u64, u64) + Send + Sync>;

#[derive(Clone)]
pub struct VerifyOptions {
    pub statements: Vec<StatementId>,
    /// Worker threads; 0 means one per available core.
    pub jobs: usize,
    pub pair_samples: u64,
    pub tuple_samples: u64,
    pub seed: u64,
    /// Factor count for tuple statements.
    pub tuple_k: usize,
    /// Largest factor order drawn for pair and tuple samples.
    pub max_factor_order: usize,
    /// m values cycled through for the Ramsey-guarded statement.
    pub m_values: Vec<usize>,
    pub fail_fast: bool,
    pub cancel: CancelToken,
    pub progress: Option<Progress>,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            statements: StatementId::all(),
            jobs: 0,
            pair_samples: 0,
            tuple_samples: 0,
            seed: 0,
            tuple_k: 3,
            max_factor_order: 7,
            m_values: vec![1, 2, 3, 4],
            fail_fast: false,
            cancel: CancelToken::new(),
            progress: None,
        }
    }
}

// Stream tags for the counter scheme; each independent sampling purpose
// gets its own stream.
const STREAM_PAIR_ORDER: u64 = 0x70616972_6f726472;
const STREAM_PAIR_GRAPH: u64 = 0x70616972_67726170;
const STREAM_TUPLE_BASE: u64 = 0x7475706c_65000000;

const HALF_PROBABILITY: fn() -> Rational64 = || Rational64::new(1, 2);
const MAX_SAMPLE_ATTEMPTS: u64 = 200_000;

/// Runs the requested statements over the corpus and samples.
pub fn run_verify(spec: &CorpusSpec, opts: &VerifyOptions) -> Result<VerificationReport, HarnessError> {
    let corpus = spec.load()?;
    let singles: Vec<StatementId> =
        opts.statements.iter().copied().filter(|s| s.arity() == Arity::Single).collect();
    let pairs: Vec<StatementId> =
        opts.statements.iter().copied().filter(|s| s.arity() == Arity::Pair).collect();
    let tuples: Vec<StatementId> =
        opts.statements.iter().copied().filter(|s| s.arity() == Arity::Tuple).collect();
    if tuples.contains(&StatementId::Prop28) {
        if opts.m_values.is_empty() {
            return Err(CatalogError::MissingM { id: StatementId::Prop28 }.into());
        }
        for &m in &opts.m_values {
            crate::bounds::ramsey_diagonal(m)?;
        }
    }

    let run = || -> Result<VerificationReport, HarnessError> {
        let stop = AtomicBool::new(false);
        let done = AtomicU64::new(0);
        let pair_work = if pairs.is_empty() { 0 } else { opts.pair_samples };
        let tuple_work = if tuples.is_empty() { 0 } else { opts.tuple_samples * tuples.len() as u64 };
        let total_work = if singles.is_empty() { 0 } else { corpus.len() }
            .saturating_add(pair_work)
            .saturating_add(tuple_work);
        let tick = |amount: u64| {
            let so_far = done.fetch_add(amount, Ordering::Relaxed) + amount;
            if let Some(p) = &opts.progress {
                p(so_far, total_work);
            }
        };

        let mut statements: BTreeMap<String, StatementTally> = BTreeMap::new();
        for id in opts.statements.iter() {
            statements.insert(id.name().to_string(), StatementTally::default());
        }

        if !singles.is_empty() {
            let shard_count = corpus.len().div_ceil(SHARD_SIZE);
            let shard_results: Vec<Vec<StatementTally>> = (0..shard_count)
                .into_par_iter()
                .map(|shard| {
                    let lo = shard * SHARD_SIZE;
                    let hi = (lo + SHARD_SIZE).min(corpus.len());
                    let out = single_shard(&corpus, lo, hi, &singles, opts, &stop);
                    tick(hi - lo);
                    out
                })
                .collect();
            for shard in shard_results {
                for (id, tally) in singles.iter().zip(shard) {
                    statements.get_mut(id.name()).expect("tally exists").merge(tally);
                }
            }
        }

        if !pairs.is_empty() && opts.pair_samples > 0 {
            let shard_count = opts.pair_samples.div_ceil(SHARD_SIZE);
            let shard_results: Vec<Vec<StatementTally>> = (0..shard_count)
                .into_par_iter()
                .map(|shard| {
                    let lo = shard * SHARD_SIZE;
                    let hi = (lo + SHARD_SIZE).min(opts.pair_samples);
                    let out = pair_shard(lo, hi, &pairs, opts, &stop);
                    tick(hi - lo);
                    out
                })
                .collect();
            for shard in shard_results {
                for (id, tally) in pairs.iter().zip(shard) {
                    statements.get_mut(id.name()).expect("tally exists").merge(tally);
                }
            }
        }

        if !tuples.is_empty() && opts.tuple_samples > 0 {
            for &id in &tuples {
                let shard_count = opts.tuple_samples.div_ceil(SHARD_SIZE);
                let shard_results: Vec<Result<StatementTally, HarnessError>> = (0..shard_count)
                    .into_par_iter()
                    .map(|shard| {
                        let lo = shard * SHARD_SIZE;
                        let hi = (lo + SHARD_SIZE).min(opts.tuple_samples);
                        let out = tuple_shard(id, lo, hi, opts, &stop);
                        tick(hi - lo);
                        out
                    })
                    .collect();
                for shard in shard_results {
                    statements.get_mut(id.name()).expect("tally exists").merge(shard?);
                }
            }
        }

        let skipped_lines = corpus
            .skipped()
            .iter()
            .map(|(line, err)| SkippedLine { line: *line, error: err.to_string() })
            .collect();

        Ok(VerificationReport {
            version: REPORT_VERSION.to_string(),
            command: "verify".to_string(),
            corpus: spec.clone(),
            corpus_size: corpus.len(),
            shard_size: SHARD_SIZE,
            shards: corpus.len().div_ceil(SHARD_SIZE),
            pair_samples: pair_work,
            tuple_samples: if tuples.is_empty() { 0 } else { opts.tuple_samples },
            sample_seed: opts.seed,
            tuple_k: opts.tuple_k,
            statements,
            skipped_lines,
            incomplete: stop.load(Ordering::Relaxed),
        })
    };

    if opts.jobs == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))?;
        pool.install(run)
    }
}

fn single_shard(
    corpus: &Corpus,
    lo: u64,
    hi: u64,
    singles: &[StatementId],
    opts: &VerifyOptions,
    stop: &AtomicBool,
) -> Vec<StatementTally> {
    let mut tallies = vec![StatementTally::default(); singles.len()];
    let mut best: Vec<Option<Rational64>> = vec![None; singles.len()];
    for index in lo..hi {
        if stop.load(Ordering::Relaxed) || opts.cancel.is_cancelled() {
            if opts.cancel.is_cancelled() {
                stop.store(true, Ordering::Relaxed);
            }
            break;
        }
        let (prov, g) = corpus.get(index);
        let ctx = GraphCtx::new(&g);
        for (slot, &id) in singles.iter().enumerate() {
            let eval = eval_single(id, &ctx);
            tallies[slot].bump(eval.verdict);
            match eval.verdict {
                Verdict::Violated => {
                    let witness = WitnessRecord::build(
                        &single_witness(id, &ctx),
                        &single_notes(id, &ctx),
                    );
                    tallies[slot].violations.push(ViolationEntry {
                        index,
                        source: prov.to_string(),
                        witness,
                    });
                    if opts.fail_fast {
                        stop.store(true, Ordering::Relaxed);
                    }
                }
                Verdict::Holds => {
                    if let Some(slack) = eval.slack {
                        if best[slot].is_none_or(|b| slack < b) {
                            best[slot] = Some(slack);
                            tallies[slot].tightness = Some(TightnessEntry {
                                min_slack: crate::report::slack_string(slack),
                                index,
                                source: prov.to_string(),
                                witness: WitnessRecord::build(
                                    &single_witness(id, &ctx),
                                    &single_notes(id, &ctx),
                                ),
                            });
                        }
                    }
                }
                Verdict::Vacuous => {}
            }
        }
    }
    tallies
}

/// The `index`-th sampled pair: orders uniform in `1..=max_factor_order`,
/// then a G(n, 1/2) draw for each side.
pub fn sample_pair(seed: u64, max_factor_order: usize, index: u64) -> (Graph, Graph) {
    let orders = Counter::new(seed, STREAM_PAIR_ORDER);
    let na = 1 + orders.draw_below(2 * index, max_factor_order as u64) as usize;
    let nb = 1 + orders.draw_below(2 * index + 1, max_factor_order as u64) as usize;
    let a = gnp_graph(na, HALF_PROBABILITY(), Counter::new(seed, STREAM_PAIR_GRAPH).draw(2 * index), 0);
    let b = gnp_graph(nb, HALF_PROBABILITY(), Counter::new(seed, STREAM_PAIR_GRAPH).draw(2 * index + 1), 0);
    (a, b)
}

fn pair_shard(
    lo: u64,
    hi: u64,
    pairs: &[StatementId],
    opts: &VerifyOptions,
    stop: &AtomicBool,
) -> Vec<StatementTally> {
    let mut tallies = vec![StatementTally::default(); pairs.len()];
    let mut best: Vec<Option<Rational64>> = vec![None; pairs.len()];
    for index in lo..hi {
        if stop.load(Ordering::Relaxed) || opts.cancel.is_cancelled() {
            if opts.cancel.is_cancelled() {
                stop.store(true, Ordering::Relaxed);
            }
            break;
        }
        let (a, b) = sample_pair(opts.seed, opts.max_factor_order, index);
        let stats = JoinStats::compute(&[a, b]);
        for (slot, &id) in pairs.iter().enumerate() {
            let eval = eval_pair(id, &stats);
            tallies[slot].bump(eval.verdict);
            match eval.verdict {
                Verdict::Violated => {
                    tallies[slot].violations.push(ViolationEntry {
                        index,
                        source: format!("pair={index}"),
                        witness: WitnessRecord::build(&stats.witness(), ""),
                    });
                    if opts.fail_fast {
                        stop.store(true, Ordering::Relaxed);
                    }
                }
                Verdict::Holds => {
                    if let Some(slack) = eval.slack {
                        if best[slot].is_none_or(|bst| slack < bst) {
                            best[slot] = Some(slack);
                            tallies[slot].tightness = Some(TightnessEntry {
                                min_slack: crate::report::slack_string(slack),
                                index,
                                source: format!("pair={index}"),
                                witness: WitnessRecord::build(&stats.witness(), ""),
                            });
                        }
                    }
                }
                Verdict::Vacuous => {}
            }
        }
    }
    tallies
}

/// Whether a factor may appear in a hypothesis-meeting tuple for `id`.
fn factor_meets_hypothesis(id: StatementId, m: usize, g: &Graph) -> bool {
    let (delta, _) = crate::invariants::degree_stats(g);
    let n = g.order() as i64;
    let delta = delta as i64;
    match id {
        StatementId::Lemma21 => delta + 1 <= n - 3,
        StatementId::Lemma22 => delta + 1 <= n - 2 && !g.is_five_cycle(),
        StatementId::Lemma30 => !g.is_complete(),
        StatementId::Prop28 => {
            if delta + 1 > n - m as i64 {
                return false;
            }
            let r_mm = crate::bounds::ramsey_diagonal(m).expect("m validated") as i64;
            n >= r_mm || FactorStats::compute(g).excess_halves() <= 1
        }
        _ => unreachable!("not a tuple statement"),
    }
}

/// The `index`-th hypothesis-meeting tuple for `id`: each slot draws
/// G(n, 1/2) factors with n uniform in `1..=max_factor_order` until one
/// meets the per-factor hypothesis.
pub fn sample_tuple(
    id: StatementId,
    opts: &VerifyOptions,
    index: u64,
) -> Result<(Vec<Graph>, usize), HarnessError> {
    let m = if id == StatementId::Prop28 {
        opts.m_values[(index % opts.m_values.len() as u64) as usize]
    } else {
        1
    };
    let stream = STREAM_TUPLE_BASE ^ crate::corpus::mix64(id.name().len() as u64 ^ id as u64);
    let orders = Counter::new(opts.seed, stream);
    let seeds = Counter::new(opts.seed, stream ^ 1);
    let mut factors = Vec::with_capacity(opts.tuple_k);
    for slot in 0..opts.tuple_k {
        let mut accepted = None;
        for attempt in 0..MAX_SAMPLE_ATTEMPTS {
            let key = index
                .wrapping_mul(1_000_003)
                .wrapping_add(slot as u64)
                .wrapping_mul(MAX_SAMPLE_ATTEMPTS)
                .wrapping_add(attempt);
            let n = 1 + orders.draw_below(key, opts.max_factor_order as u64) as usize;
            let g = gnp_graph(n, HALF_PROBABILITY(), seeds.draw(key), 0);
            if factor_meets_hypothesis(id, m, &g) {
                accepted = Some(g);
                break;
            }
        }
        match accepted {
            Some(g) => factors.push(g),
            None => {
                return Err(HarnessError::SamplingExhausted {
                    statement: id,
                    slot,
                    attempts: MAX_SAMPLE_ATTEMPTS,
                })
            }
        }
    }
    Ok((factors, m))
}

fn tuple_source(id: StatementId, index: u64, m: usize) -> String {
    if id == StatementId::Prop28 {
        format!("tuple={index} m={m}")
    } else {
        format!("tuple={index}")
    }
}

fn tuple_shard(
    id: StatementId,
    lo: u64,
    hi: u64,
    opts: &VerifyOptions,
    stop: &AtomicBool,
) -> Result<StatementTally, HarnessError> {
    let mut tally = StatementTally::default();
    let mut best: Option<Rational64> = None;
    for index in lo..hi {
        if stop.load(Ordering::Relaxed) || opts.cancel.is_cancelled() {
            if opts.cancel.is_cancelled() {
                stop.store(true, Ordering::Relaxed);
            }
            break;
        }
        let (factors, m) = sample_tuple(id, opts, index)?;
        let stats = JoinStats::compute(&factors);
        let eval = eval_tuple(id, &stats, Some(m))?;
        tally.bump(eval.verdict);
        match eval.verdict {
            Verdict::Violated => {
                tally.violations.push(ViolationEntry {
                    index,
                    source: tuple_source(id, index, m),
                    witness: WitnessRecord::build(&stats.witness(), ""),
                });
                if opts.fail_fast {
                    stop.store(true, Ordering::Relaxed);
                }
            }
            Verdict::Holds => {
                if let Some(slack) = eval.slack {
                    if best.is_none_or(|bst| slack < bst) {
                        best = Some(slack);
                        tally.tightness = Some(TightnessEntry {
                            min_slack: crate::report::slack_string(slack),
                            index,
                            source: tuple_source(id, index, m),
                            witness: WitnessRecord::build(&stats.witness(), ""),
                        });
                    }
                }
            }
            Verdict::Vacuous => {}
        }
    }
    Ok(tally)
}
