//! reedcheck: analyze graphs, verify the bound catalog over corpora, and
//! search join families for counterexamples and tightness witnesses.
//!
//! Exit codes: 0 clean, 1 operational error, 2 violations found by
//! verify, 3 counterexample found by search.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use reed_core::bounds::{lemma7_witness_graph, GraphCtx, Lemma7Outcome, StatementId};
use reed_core::cancel::CancelToken;
use reed_core::corpus::{named, CorpusSpec, FileErrorMode};
use reed_core::graph::Graph;
use reed_core::graph6::{from_graph6, to_graph6};
use reed_core::half::{rational_pretty, rational_string};
use reed_core::harness::{run_verify, VerifyOptions};
use reed_core::invariants::InvariantRecord;
use reed_core::matching::{has_one_factor, is_matching_covered, tutte_witness};
use reed_core::report::VerificationReport;
use reed_core::search::{conjecture29_search, lemma22_injection_scan};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

const EXIT_OK: u8 = 0;
const EXIT_OPERATIONAL: u8 = 1;
const EXIT_VIOLATION: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Parser)]
#[command(name = "reedcheck", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact invariants and membership report of one graph
    /// (graph6 string or a catalog name like "cycle(5)").
    Analyze {
        input: String,
    },
    /// Run catalog statements over a corpus and write a machine report.
    Verify(VerifyArgs),
    /// Search join families: exhaustive counterexample scan or a
    /// minimum-slack tightness scan for one statement.
    Search(SearchArgs),
    /// Print the statement catalog (id, input arity, tested claim).
    Statements,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CorpusKind {
    Exhaustive,
    Random,
    File,
    Named,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct CorpusArgs {
    /// Graph source.
    #[arg(long, value_enum, default_value = "exhaustive")]
    corpus: CorpusKind,
    /// Order for exhaustive and random corpora.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// One representative per isomorphism class (exhaustive only).
    #[arg(long)]
    dedup: bool,
    /// Edge probability as an exact rational "p/q" (random only).
    #[arg(long, default_value = "1/2")]
    p: String,
    /// Stream seed for random corpora and sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random graphs.
    #[arg(long, default_value_t = 1000)]
    count: u64,
    /// graph6 file, one graph per line (file only).
    #[arg(long)]
    path: Option<PathBuf>,
    /// Catalog graph name (named only).
    #[arg(long)]
    name: Option<String>,
    /// Stop at the first malformed graph6 line instead of skipping it.
    #[arg(long)]
    fail_fast_parse: bool,
}

impl CorpusArgs {
    fn to_spec(&self) -> Result<CorpusSpec, String> {
        match self.corpus {
            CorpusKind::Exhaustive => Ok(CorpusSpec::Exhaustive { n: self.n, dedup: self.dedup }),
            CorpusKind::Random => Ok(CorpusSpec::Random {
                n: self.n,
                p: parse_rational(&self.p)?,
                seed: self.seed,
                count: self.count,
            }),
            CorpusKind::File => {
                let path = self.path.clone().ok_or("--corpus file requires --path")?;
                let on_error = if self.fail_fast_parse {
                    FileErrorMode::FailFast
                } else {
                    FileErrorMode::SkipAndLog
                };
                Ok(CorpusSpec::File { path, on_error })
            }
            CorpusKind::Named => {
                let name = self.name.clone().ok_or("--corpus named requires --name")?;
                Ok(CorpusSpec::Named { name })
            }
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Comma-separated statement ids, or "all".
    #[arg(long, default_value = "all")]
    statements: String,
    /// Sample count for pair statements.
    #[arg(long, default_value_t = 0)]
    pairs: u64,
    /// Sample count per tuple statement.
    #[arg(long, default_value_t = 0)]
    tuples: u64,
    /// Factor count for tuple statements.
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Comma-separated m values cycled by the Ramsey-guarded statement.
    #[arg(long, default_value = "1,2,3,4")]
    m: String,
    /// Largest factor order for pair and tuple samples.
    #[arg(long, default_value_t = 7)]
    max_factor_order: usize,
    /// Machine report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Machine report format: json report or csv per-graph invariants.
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Stop at the first violation.
    #[arg(long)]
    fail_fast: bool,
    /// Suppress progress output.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct SearchArgs {
    /// Search target: "conjecture29" or "tightness".
    target: String,
    /// Join parameter m (conjecture29).
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Factor count.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Largest factor order enumerated.
    #[arg(long, default_value_t = 6)]
    max_factor_order: usize,
    /// Statement id for tightness scans.
    #[arg(long)]
    statement: Option<String>,
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Machine report path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for tightness scans (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Suppress progress output.
    #[arg(long)]
    quiet: bool,
    /// Disable the 5-cycle factor exclusion probe guard (lemma22 scan).
    #[arg(long)]
    inject_five_cycles: bool,
}

fn parse_rational(text: &str) -> Result<Rational64, String> {
    let parse_int = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("bad rational {text:?}: {e}"));
    match text.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q == 0 {
                return Err(format!("bad rational {text:?}: zero denominator"));
            }
            Ok(Rational64::new(parse_int(p)?, q))
        }
        None => Ok(Rational64::from_integer(parse_int(text)?)),
    }
}

fn parse_statements(text: &str) -> Result<Vec<StatementId>, String> {
    if text.trim() == "all" {
        return Ok(StatementId::all());
    }
    text.split(',')
        .map(|s| s.trim().parse::<StatementId>().map_err(|e| e.to_string()))
        .collect()
}

static CANCEL: OnceLock<CancelToken> = OnceLock::new();

extern "C" fn on_interrupt(_: libc::c_int) {
    if let Some(token) = CANCEL.get() {
        token.cancel();
    }
}

fn install_interrupt_handler(token: CancelToken) {
    CANCEL.set(token).ok();
    unsafe {
        let handler = on_interrupt as *const () as libc::sighandler_t;
        libc::signal(libc::SIGINT, handler);
        libc::signal(libc::SIGTERM, handler);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { input } => cmd_analyze(&input),
        Command::Verify(args) => cmd_verify(args),
        Command::Search(args) => cmd_search(args),
        Command::Statements => cmd_statements(),
    };
    match code {
        Ok(c) => ExitCode::from(c),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_OPERATIONAL)
        }
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn parse_graph_input(input: &str) -> Result<Graph, String> {
    match named(input) {
        Ok(g) => Ok(g),
        Err(name_err) => match from_graph6(input) {
            Ok(g) => Ok(g),
            Err(g6_err) => Err(format!(
                "input is neither a catalog name ({name_err}) nor graph6 ({g6_err})"
            )),
        },
    }
}

fn cmd_analyze(input: &str) -> Result<u8, String> {
    let g = parse_graph_input(input)?;
    let ctx = GraphCtx::new(&g);
    let record = ctx.record();
    let reed = ctx.reed_report();
    let n = g.order();

    println!("graph: {}", to_graph6(&g).unwrap_or_else(|_| format!("<order {n}>")));
    println!("n={n} edges={}", g.edge_count());
    println!(
        "chi={} omega={} alpha={} Delta={} delta={} nu={}",
        record.chromatic,
        record.clique,
        record.independence,
        record.max_degree,
        record.min_degree,
        record.matching
    );
    println!(
        "excess={} conjecture_ok={} tightest_t={}",
        rational_pretty(reed.excess.to_rational()),
        reed.conjecture_ok,
        reed.tightest_t
    );

    let fact = g.join_factorization();
    if fact.factor_count() == 1 {
        println!("join factorization: 1 factor (complement connected)");
    } else {
        let orders: Vec<String> =
            fact.factors.iter().map(|f| f.order().to_string()).collect();
        println!(
            "join factorization: {} factors of orders [{}]",
            fact.factor_count(),
            orders.join(",")
        );
    }

    let co = g.complement();
    let co_nu = reed_core::matching::matching_number(&co);
    println!(
        "complement: nu={} one_factor={} matching_covered={}{}",
        co_nu,
        has_one_factor(&co),
        is_matching_covered(&co),
        if co.edge_count() == 0 { " (edgeless: not matching covered by convention)" } else { "" }
    );
    let tw = tutte_witness(&g);
    println!(
        "tutte witness: removed={} odd_components={} deficiency={}",
        tw.removed, tw.odd_components, tw.deficiency
    );

    match lemma7_witness_graph(&g) {
        Lemma7Outcome::Vacuous => {}
        Lemma7Outcome::Witness(x) => {
            println!("chi > ceil(n/2): removal witness X={x} keeps chi with disconnected complement");
        }
        Lemma7Outcome::SearchExhausted => {
            println!("chi > ceil(n/2): NO removal witness exists (unexpected)");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_statements() -> Result<u8, String> {
    println!("{:<16} {:<7} {}", "id", "input", "claim");
    for info in reed_core::bounds::CATALOG {
        let arity = match info.arity {
            reed_core::bounds::Arity::Single => "graph",
            reed_core::bounds::Arity::Pair => "pair",
            reed_core::bounds::Arity::Tuple => "tuple",
        };
        println!("{:<16} {:<7} {}", info.id.name(), arity, info.description);
    }
    println!();
    println!("nu is the maximum-matching size throughout (the 1-factor and");
    println!("deficiency statements need maximum, not just maximal, matchings).");
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn make_progress(quiet: bool) -> Option<reed_core::harness::Progress> {
    if quiet {
        return None;
    }
    let last = Arc::new(AtomicU64::new(0));
    Some(Arc::new(move |done: u64, total: u64| {
        if total == 0 {
            return;
        }
        let pct = done * 100 / total;
        let prev = last.swap(pct, Ordering::Relaxed);
        if pct / 5 > prev / 5 || done == total {
            eprintln!("progress: {done}/{total} ({pct}%)");
        }
    }))
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, String> {
    let spec = args.corpus.to_spec()?;
    let statements = parse_statements(&args.statements)?;
    let m_values: Result<Vec<usize>, _> =
        args.m.split(',').map(|s| s.trim().parse::<usize>()).collect();
    let cancel = CancelToken::new();
    install_interrupt_handler(cancel.clone());

    let opts = VerifyOptions {
        statements,
        jobs: args.jobs,
        pair_samples: args.pairs,
        tuple_samples: args.tuples,
        seed: args.corpus.seed,
        tuple_k: args.k,
        max_factor_order: args.max_factor_order,
        m_values: m_values.map_err(|e| format!("bad --m list: {e}"))?,
        fail_fast: args.fail_fast,
        cancel,
        progress: make_progress(args.quiet),
    };

    let report = run_verify(&spec, &opts).map_err(|e| e.to_string())?;
    print_summary(&report);

    if let Some(path) = &args.out {
        match args.format {
            OutputFormat::Json => {
                std::fs::write(path, report.to_json()).map_err(|e| format!("write {path:?}: {e}"))?;
            }
            OutputFormat::Csv => {
                let csv = invariant_csv(&spec).map_err(|e| e.to_string())?;
                std::fs::write(path, csv).map_err(|e| format!("write {path:?}: {e}"))?;
            }
        }
        eprintln!("report written to {}", path.display());
    }

    if report.incomplete && report.total_violations() == 0 {
        return Err("run interrupted before completion".to_string());
    }
    Ok(if report.total_violations() > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

fn print_summary(report: &VerificationReport) {
    println!(
        "corpus size {} | pair samples {} | tuple samples {}{}",
        report.corpus_size,
        report.pair_samples,
        report.tuple_samples,
        if report.incomplete { " | INCOMPLETE" } else { "" }
    );
    println!("{:<16} {:>12} {:>12} {:>12}  {}", "statement", "holds", "vacuous", "violated", "min slack");
    for (name, tally) in &report.statements {
        println!(
            "{:<16} {:>12} {:>12} {:>12}  {}",
            name,
            tally.holds,
            tally.vacuous,
            tally.violated,
            tally.tightness.as_ref().map_or("-".to_string(), |t| t.min_slack.clone())
        );
    }
    if !report.skipped_lines.is_empty() {
        println!("skipped {} malformed graph6 lines", report.skipped_lines.len());
    }
    for (name, tally) in &report.statements {
        for v in tally.violations.iter().take(5) {
            println!("VIOLATION {name} at {} ({})", v.index, v.source);
        }
    }
}

/// Flat per-graph invariant table for the whole corpus.
fn invariant_csv(spec: &CorpusSpec) -> Result<String, reed_core::harness::HarnessError> {
    let corpus = spec.load()?;
    let mut out = String::from(VerificationReport::csv_header());
    for (_, g) in corpus.iter() {
        let r = InvariantRecord::compute(&g);
        let reed = reed_core::bounds::reed_report(&g);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            to_graph6(&g).unwrap_or_else(|_| "<too large>".to_string()),
            g.order(),
            r.chromatic,
            r.clique,
            r.independence,
            r.max_degree,
            r.min_degree,
            r.matching,
            rational_string(reed.excess.to_rational()),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

fn cmd_search(args: SearchArgs) -> Result<u8, String> {
    let cancel = CancelToken::new();
    install_interrupt_handler(cancel.clone());
    match args.target.as_str() {
        "conjecture29" => {
            let quiet = args.quiet;
            let progress = move |tuples: u64| {
                if !quiet {
                    eprintln!("progress: {tuples} tuples tested");
                }
            };
            let report = if args.inject_five_cycles {
                lemma22_injection_scan(args.k, args.max_factor_order, &cancel)
            } else {
                conjecture29_search(args.m, args.k, args.max_factor_order, &cancel, Some(&progress))
            }
            .map_err(|e| e.to_string())?;

            println!(
                "target {} m={} k={} factors<=|{}| profiles={} tuples={}{}",
                report.target,
                report.m,
                report.k,
                report.max_factor_order,
                report.profile_count,
                report.tuples_tested,
                if report.empty_domain { " (empty domain)" } else { "" }
            );
            match report.min_slack.as_ref() {
                Some(t) => println!("min slack {} at factors {:?}", t.slack, t.factors_graph6),
                None => println!("min slack: none (no holding tuple)"),
            }
            for v in report.violations.iter().take(10) {
                println!(
                    "VIOLATION factors {:?} excess {} target {}",
                    v.factors_graph6, v.excess, v.target_t
                );
            }
            if report.violations.len() > 10 {
                println!("... {} violations total", report.violations.len());
            }
            if let Some(path) = &args.out {
                std::fs::write(path, report.to_json()).map_err(|e| format!("write {path:?}: {e}"))?;
                eprintln!("report written to {}", path.display());
            }
            if report.incomplete {
                return Err("search interrupted before completion".to_string());
            }
            Ok(if report.violations.is_empty() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        "tightness" => {
            let id: StatementId = args
                .statement
                .as_deref()
                .ok_or("tightness search requires --statement")?
                .parse()
                .map_err(|e: reed_core::bounds::CatalogError| e.to_string())?;
            let spec = args.corpus.to_spec()?;
            let opts = VerifyOptions {
                statements: vec![id],
                jobs: args.jobs,
                pair_samples: if id.arity() == reed_core::bounds::Arity::Pair { args.corpus.count } else { 0 },
                tuple_samples: if id.arity() == reed_core::bounds::Arity::Tuple { args.corpus.count } else { 0 },
                seed: args.corpus.seed,
                tuple_k: args.k,
                max_factor_order: args.max_factor_order,
                m_values: vec![args.m],
                fail_fast: false,
                cancel,
                progress: make_progress(args.quiet),
            };
            let report = run_verify(&spec, &opts).map_err(|e| e.to_string())?;
            print_summary(&report);
            let tally = report.tally(id).expect("requested statement present");
            if let Some(t) = &tally.tightness {
                println!("min slack for {id}: {} at {} ({})", t.min_slack, t.index, t.source);
            } else {
                println!("min slack for {id}: none (no holding instance)");
            }
            if let Some(path) = &args.out {
                std::fs::write(path, report.to_json()).map_err(|e| format!("write {path:?}: {e}"))?;
                eprintln!("report written to {}", path.display());
            }
            if report.incomplete && report.total_violations() == 0 {
                return Err("run interrupted before completion".to_string());
            }
            Ok(if report.total_violations() > 0 { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
        }
        other => Err(format!("unknown search target {other:?} (want conjecture29 or tightness)")),
    }
}
