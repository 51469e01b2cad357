//! Graph sources for verification runs: exhaustive labeled enumeration
//! (optionally one representative per isomorphism class), seeded random
//! graphs, graph6 files and a small named-graph catalog.

use crate::graph::{pair_index, Graph};
use crate::graph6::{from_graph6, Graph6Error};
use num_rational::Rational64;
use serde::Serialize;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Exhaustive labeled enumeration stops here: the invariant suite must
/// finish over all `2^(n(n-1)/2)` graphs in desk-scale time.
pub const MAX_EXHAUSTIVE_ORDER: usize = 7;

/// Isomorphism-class deduplication is a naive `n! * 2^(n(n-1)/2)`
/// permutation minimization, so it stops one order earlier.
pub const MAX_DEDUP_ORDER: usize = 6;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("exhaustive corpus order {n} out of range 1..={max}")]
    ExhaustiveOrder { n: usize, max: usize },
    #[error("edge probability {p} outside [0, 1]")]
    Probability { p: Rational64 },
    #[error("random corpus order {n} out of range 1..=62")]
    RandomOrder { n: usize },
    #[error("unknown named graph {name:?}")]
    UnknownName { name: String },
    #[error("named graph {name:?}: {reason}")]
    BadParameter { name: String, reason: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Parse {
        path: PathBuf,
        line: usize,
        #[source]
        source: Graph6Error,
    },
}

// ---------------------------------------------------------------------------
// Counter-based pseudorandom draws
// ---------------------------------------------------------------------------

/// SplitMix64 finalizer. Together with the golden-ratio increment below it
/// defines the portable counter scheme used for every seeded draw in this
/// crate: `draw(seed, stream, i) = mix64(mix64(seed ^ mix64(stream)) +
/// i * 0x9e3779b97f4a7c15)`. Pure wrapping `u64` arithmetic, so streams are
/// reproducible across platforms.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

const GOLDEN: u64 = 0x9e3779b97f4a7c15;

/// One independent stream of uniform `u64` draws.
#[derive(Clone, Copy, Debug)]
pub struct Counter {
    base: u64,
}

impl Counter {
    pub fn new(seed: u64, stream: u64) -> Counter {
        Counter { base: mix64(seed ^ mix64(stream)) }
    }

    pub fn draw(&self, index: u64) -> u64 {
        mix64(self.base.wrapping_add(index.wrapping_mul(GOLDEN)))
    }

    /// Uniform value in `0..bound` (`bound > 0`) by 128-bit multiply;
    /// bias is below 2^-64 and identical on every platform.
    pub fn draw_below(&self, index: u64, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        ((self.draw(index) as u128 * bound as u128) >> 64) as u64
    }
}

/// Bernoulli trial with exact rational probability: the 64-bit draw `d`
/// succeeds iff `d * denom < numer * 2^64`.
pub fn bernoulli(draw: u64, p: Rational64) -> bool {
    let num = *p.numer() as u128;
    let den = *p.denom() as u128;
    (draw as u128) * den < num << 64
}

// ---------------------------------------------------------------------------
// Corpus specification
// ---------------------------------------------------------------------------

/// How malformed lines in a graph6 file are treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FileErrorMode {
    FailFast,
    SkipAndLog,
}

/// A reproducible graph source.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CorpusSpec {
    /// All `2^(n(n-1)/2)` labeled graphs in increasing edge-bitmask order,
    /// or one representative per isomorphism class when `dedup` is set.
    Exhaustive { n: usize, dedup: bool },
    /// `count` independent G(n, p) draws from the counter scheme.
    Random {
        n: usize,
        #[serde(serialize_with = "serialize_rational")]
        p: Rational64,
        seed: u64,
        count: u64,
    },
    /// One graph6 line per graph.
    File { path: PathBuf, on_error: FileErrorMode },
    /// A single catalog graph.
    Named { name: String },
}

fn serialize_rational<S: serde::Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::half::rational_string(*r))
}

impl CorpusSpec {
    pub fn exhaustive(n: usize, dedup: bool) -> CorpusSpec {
        CorpusSpec::Exhaustive { n, dedup }
    }

    pub fn random(n: usize, p: Rational64, seed: u64, count: u64) -> CorpusSpec {
        CorpusSpec::Random { n, p, seed, count }
    }

    /// Materializes the corpus into an indexable form. Exhaustive and
    /// random corpora stay virtual; files are read eagerly so that parse
    /// errors surface here with line numbers.
    pub fn load(&self) -> Result<Corpus, CorpusError> {
        match self {
            CorpusSpec::Exhaustive { n, dedup } => {
                let max = if *dedup { MAX_DEDUP_ORDER } else { MAX_EXHAUSTIVE_ORDER };
                if *n < 1 || *n > max {
                    return Err(CorpusError::ExhaustiveOrder { n: *n, max });
                }
                if *dedup {
                    Ok(Corpus::DedupMasks { n: *n, masks: canonical_masks(*n) })
                } else {
                    Ok(Corpus::Masks { n: *n, count: 1u64 << (n * (n - 1) / 2) })
                }
            }
            CorpusSpec::Random { n, p, seed, count } => {
                if *n < 1 || *n > 62 {
                    return Err(CorpusError::RandomOrder { n: *n });
                }
                if *p < Rational64::from_integer(0) || *p > Rational64::from_integer(1) {
                    return Err(CorpusError::Probability { p: *p });
                }
                Ok(Corpus::Random { n: *n, p: *p, seed: *seed, count: *count })
            }
            CorpusSpec::File { path, on_error } => {
                let (graphs, skipped) = read_graph6_file(path, *on_error)?;
                Ok(Corpus::Listed { graphs, skipped })
            }
            CorpusSpec::Named { name } => {
                let g = named(name)?;
                Ok(Corpus::Listed { graphs: vec![(Provenance::Named(name.clone()), g)], skipped: Vec::new() })
            }
        }
    }
}

/// Where a corpus graph came from, for witness reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Mask(u64),
    RandomIndex(u64),
    Line(usize),
    Named(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Mask(m) => write!(f, "mask={m}"),
            Provenance::RandomIndex(i) => write!(f, "index={i}"),
            Provenance::Line(l) => write!(f, "line={l}"),
            Provenance::Named(n) => write!(f, "name={n}"),
        }
    }
}

/// An indexable, reproducible sequence of graphs.
pub enum Corpus {
    Masks { n: usize, count: u64 },
    DedupMasks { n: usize, masks: Vec<u64> },
    Random { n: usize, p: Rational64, seed: u64, count: u64 },
    Listed { graphs: Vec<(Provenance, Graph)>, skipped: Vec<(usize, Graph6Error)> },
}

impl Corpus {
    pub fn len(&self) -> u64 {
        match self {
            Corpus::Masks { count, .. } => *count,
            Corpus::DedupMasks { masks, .. } => masks.len() as u64,
            Corpus::Random { count, .. } => *count,
            Corpus::Listed { graphs, .. } => graphs.len() as u64,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: u64) -> (Provenance, Graph) {
        match self {
            Corpus::Masks { n, .. } => {
                (Provenance::Mask(index), Graph::from_edge_mask(*n, index))
            }
            Corpus::DedupMasks { n, masks } => {
                let mask = masks[index as usize];
                (Provenance::Mask(mask), Graph::from_edge_mask(*n, mask))
            }
            Corpus::Random { n, p, seed, .. } => {
                (Provenance::RandomIndex(index), gnp_graph(*n, *p, *seed, index))
            }
            Corpus::Listed { graphs, .. } => graphs[index as usize].clone(),
        }
    }

    /// Lines that failed to parse in skip-and-log mode.
    pub fn skipped(&self) -> &[(usize, Graph6Error)] {
        match self {
            Corpus::Listed { skipped, .. } => skipped,
            _ => &[],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Provenance, Graph)> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

/// The G(n, p) draw for one stream index: pair `(i, j)` is an edge iff the
/// draw at its [`pair_index`] passes the exact-rational Bernoulli test.
pub fn gnp_graph(n: usize, p: Rational64, seed: u64, index: u64) -> Graph {
    let counter = Counter::new(seed, index);
    let mut adj = vec![0u64; n];
    for j in 1..n {
        for i in 0..j {
            if bernoulli(counter.draw(pair_index(i, j) as u64), p) {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
        }
    }
    Graph::from_rows_unchecked(adj)
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration
// ---------------------------------------------------------------------------

/// All labeled graphs of order `n` in increasing edge-bitmask order.
pub fn enumerate_labeled(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n >= 1 && n <= MAX_EXHAUSTIVE_ORDER, "order {n} out of range");
    (0..1u64 << (n * (n - 1) / 2)).map(move |mask| Graph::from_edge_mask(n, mask))
}

/// `count` independent G(n, p) draws; stream `i` of the counter scheme.
pub fn random_gnp(n: usize, p: Rational64, seed: u64, count: u64) -> impl Iterator<Item = Graph> {
    (0..count).map(move |i| gnp_graph(n, p, seed, i))
}

/// Minimum edge bitmask over all relabelings of the graph given by `mask`.
pub fn canonical_mask(n: usize, mask: u64, perms: &[Vec<usize>]) -> u64 {
    let mut best = mask;
    for perm in perms {
        let mut relabeled = 0u64;
        for j in 1..n {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    let (a, b) = (perm[i], perm[j]);
                    let idx = if a < b { pair_index(a, b) } else { pair_index(b, a) };
                    relabeled |= 1u64 << idx;
                }
            }
        }
        best = best.min(relabeled);
    }
    best
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permutations(&mut items, n, &mut out);
    out
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Edge bitmasks of the canonical representatives (minimum mask in each
/// isomorphism class), ascending.
pub fn canonical_masks(n: usize) -> Vec<u64> {
    assert!(n >= 1 && n <= MAX_DEDUP_ORDER, "dedup order {n} out of range");
    let perms = all_permutations(n);
    let mut out = Vec::new();
    for mask in 0..1u64 << (n * (n - 1) / 2) {
        if canonical_mask(n, mask, &perms) == mask {
            out.push(mask);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// graph6 files
// ---------------------------------------------------------------------------

type ParsedFile = (Vec<(Provenance, Graph)>, Vec<(usize, Graph6Error)>);

fn read_graph6_file(path: &Path, on_error: FileErrorMode) -> Result<ParsedFile, CorpusError> {
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut graphs = Vec::new();
    let mut skipped = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed == ">>graph6<<" {
            continue;
        }
        match from_graph6(trimmed) {
            Ok(g) => graphs.push((Provenance::Line(lineno), g)),
            Err(e) => match on_error {
                FileErrorMode::FailFast => {
                    return Err(CorpusError::Parse { path: path.to_path_buf(), line: lineno, source: e })
                }
                FileErrorMode::SkipAndLog => skipped.push((lineno, e)),
            },
        }
    }
    Ok((graphs, skipped))
}

// ---------------------------------------------------------------------------
// Named graphs
// ---------------------------------------------------------------------------

/// Builds a catalog graph from a textual name.
///
/// Catalog: `complete(n)`, `cycle(n)` for `n >= 3`, `path(n)`, `empty(n)`,
/// `star(n)` (center 0, leaves 1..n-1), `petersen` (outer 5-cycle 0..4,
/// inner pentagram 5..9, spokes `v <-> v+5`), `complete_bipartite(a,b)`
/// (parts `0..a` and `a..a+b`).
pub fn named(name: &str) -> Result<Graph, CorpusError> {
    let name = name.trim();
    if name == "petersen" {
        let mut edges = Vec::new();
        for v in 0..5 {
            edges.push((v, (v + 1) % 5));
            edges.push((5 + v, 5 + (v + 2) % 5));
            edges.push((v, v + 5));
        }
        return Ok(Graph::from_edges(10, &edges));
    }
    let (kind, args) = match name.find('(') {
        Some(open) if name.ends_with(')') => {
            let inner = &name[open + 1..name.len() - 1];
            let args: Result<Vec<usize>, _> =
                inner.split(',').map(|a| a.trim().parse::<usize>()).collect();
            match args {
                Ok(v) => (&name[..open], v),
                Err(_) => {
                    return Err(CorpusError::BadParameter {
                        name: name.to_string(),
                        reason: format!("cannot parse arguments {inner:?}"),
                    })
                }
            }
        }
        _ => return Err(CorpusError::UnknownName { name: name.to_string() }),
    };
    let bad = |reason: &str| CorpusError::BadParameter {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    match (kind, args.as_slice()) {
        ("complete", &[n]) if n >= 1 => {
            let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            Ok(Graph::from_edges(n, &edges))
        }
        ("empty", &[n]) if n >= 1 => Ok(Graph::empty(n)),
        ("cycle", &[n]) if n >= 3 => {
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Ok(Graph::from_edges(n, &edges))
        }
        ("cycle", &[_]) => Err(bad("cycle needs n >= 3")),
        ("path", &[n]) if n >= 1 => {
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
            Ok(Graph::from_edges(n, &edges))
        }
        ("star", &[n]) if n >= 1 => {
            let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
            Ok(Graph::from_edges(n, &edges))
        }
        ("complete_bipartite", &[a, b]) if a >= 1 && b >= 1 => {
            let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
            Ok(Graph::from_edges(a + b, &edges))
        }
        ("complete" | "empty" | "path" | "star", _) => Err(bad("needs one argument n >= 1")),
        ("complete_bipartite", _) => Err(bad("needs two arguments a, b >= 1")),
        _ => Err(CorpusError::UnknownName { name: name.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn gnp_probability_extremes() {
        let edgeless = gnp_graph(7, Rational64::from_integer(0), 99, 3);
        assert_eq!(edgeless.edge_count(), 0);
        let complete = gnp_graph(7, Rational64::from_integer(1), 99, 3);
        assert!(complete.is_complete());
    }

    #[test]
    fn dedup_class_counts_small() {
        assert_eq!(canonical_masks(1).len(), 1);
        assert_eq!(canonical_masks(2).len(), 2);
        assert_eq!(canonical_masks(3).len(), 4);
        assert_eq!(canonical_masks(4).len(), 11);
    }

    #[test]
    fn spec_limits_are_enforced() {
        assert!(CorpusSpec::exhaustive(8, false).load().is_err());
        assert!(CorpusSpec::exhaustive(7, true).load().is_err());
        assert!(CorpusSpec::exhaustive(7, false).load().is_ok());
        assert!(CorpusSpec::exhaustive(6, true).load().is_ok());
        assert!(CorpusSpec::random(5, Rational64::new(3, 2), 0, 10).load().is_err());
    }

    #[test]
    fn empty_file_gives_empty_stream() {
        let dir = std::env::temp_dir().join("reed-core-corpus-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.g6");
        std::fs::write(&path, "").unwrap();
        let corpus = CorpusSpec::File { path, on_error: FileErrorMode::FailFast }.load().unwrap();
        assert!(corpus.is_empty());
    }

    #[test]
    fn named_petersen_shape() {
        let g = named("petersen").unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn named_constructions() {
        assert_eq!(named("cycle(5)").unwrap().edges(), vec![(0, 1), (1, 2), (2, 3), (0, 4), (3, 4)]);
        assert_eq!(named("complete(1)").unwrap().order(), 1);
        assert_eq!(named("path(1)").unwrap().order(), 1);
        assert_eq!(named("star(4)").unwrap().neighbors(0), VertexSet(0b1110));
        let kab = named("complete_bipartite(2,3)").unwrap();
        assert_eq!(kab.edge_count(), 6);
        assert!(!kab.has_edge(0, 1) && kab.has_edge(0, 2));
    }

    #[test]
    fn named_errors() {
        assert!(matches!(named("frobnitz"), Err(CorpusError::UnknownName { .. })));
        assert!(matches!(named("cycle(2)"), Err(CorpusError::BadParameter { .. })));
        assert!(matches!(named("complete(0)"), Err(CorpusError::BadParameter { .. })));
        assert!(matches!(named("cycle(x)"), Err(CorpusError::BadParameter { .. })));
        assert!(matches!(named("complete_bipartite(3)"), Err(CorpusError::BadParameter { .. })));
    }
}
