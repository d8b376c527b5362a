use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::source::{ingest_graph6_file, mask_count, parse_line, ConnectedLabeled, GraphSource};
use super::EnumError;
use crate::graph::{is_connected, to_graph6, Graph};
use crate::spectral;
use crate::{BoundKind, Tolerances};

/// Masks handed to one worker at a time by the built-in enumeration.
const MASK_CHUNK: u64 = 1 << 14;
/// Lines read from a file before a batch is evaluated.
const LINE_BATCH: usize = 1 << 16;
/// Grid used to compare `s` values when ranking minimizers.
const TIE_QUANTUM: f64 = 1e-9;

/// How the per-graph work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Data-parallel over the global rayon pool. Runs sequentially when the
    /// `parallel` feature is disabled.
    #[default]
    Parallel,
    /// Data-parallel over a dedicated pool of this many threads.
    ParallelWith(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub threshold: BoundKind,
    /// Skip (and count) disconnected graphs instead of evaluating them.
    pub connected_only: bool,
    pub top_k: usize,
    pub execution: Execution,
    pub tolerances: Tolerances,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            threshold: BoundKind::NMinusOne,
            connected_only: true,
            top_k: 10,
            execution: Execution::default(),
            tolerances: Tolerances::default(),
        }
    }
}

/// Aggregate of one order `n`. `min_s` and `min_s_margin` are absent when no
/// graph was evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub n: usize,
    pub graphs_tested: u64,
    pub violations: u64,
    pub skipped_disconnected: u64,
    pub eigen_failures: u64,
    pub min_s: Option<f64>,
    pub min_s_margin: Option<f64>,
    pub minimizers: Vec<String>,
    pub threshold_kind: String,
    pub threshold: f64,
    pub tolerance: f64,
    pub zero_tolerance: f64,
    pub wall_time_secs: f64,
}

impl SweepSummary {
    pub fn digest(&self) -> String {
        let fmt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.12}"));
        format!(
            "n={} tested={} violations={} skipped={} eigen_failures={} min_s={} margin={} threshold={}={} minimizers=[{}] time={:.3}s",
            self.n,
            self.graphs_tested,
            self.violations,
            self.skipped_disconnected,
            self.eigen_failures,
            fmt(self.min_s),
            fmt(self.min_s_margin),
            self.threshold_kind,
            self.threshold,
            self.minimizers.join(","),
            self.wall_time_secs,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Candidate {
    key: i64,
    graph6: String,
    s: f64,
}

/// Mergeable partial result for one order. Merging is associative and
/// commutative, so the final value does not depend on how work was split.
#[derive(Debug, Clone, Default, PartialEq)]
struct Accumulator {
    tested: u64,
    violations: u64,
    skipped: u64,
    failures: u64,
    min_s: Option<f64>,
    min_margin: Option<f64>,
    /// the `top_k` least `(key, graph6)` pairs, sorted
    best: Vec<Candidate>,
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Accumulator {
    fn merge(mut self, other: Accumulator, top_k: usize) -> Accumulator {
        self.tested += other.tested;
        self.violations += other.violations;
        self.skipped += other.skipped;
        self.failures += other.failures;
        self.min_s = min_opt(self.min_s, other.min_s);
        self.min_margin = min_opt(self.min_margin, other.min_margin);
        self.best.extend(other.best);
        self.best
            .sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.graph6.cmp(&b.graph6)));
        self.best.dedup_by(|a, b| a.graph6 == b.graph6);
        self.best.truncate(top_k);
        self
    }

    fn admits(&self, key: i64, top_k: usize) -> bool {
        self.best.len() < top_k || self.best.last().is_some_and(|c| key <= c.key)
    }

    fn observe(&mut self, g: &Graph, opts: &SweepOptions) {
        if opts.connected_only && !is_connected(g) {
            self.skipped += 1;
            return;
        }
        let spec = match spectral::eigenvalues(g) {
            Ok(spec) => spec,
            Err(_) => {
                self.failures += 1;
                return;
            }
        };
        let (plus, minus) = spectral::square_energy_parts(&spec, &opts.tolerances);
        let s = plus.min(minus);
        let margin = s - opts.threshold.threshold(g.n());
        self.tested += 1;
        if margin < -opts.tolerances.cert {
            self.violations += 1;
        }
        self.min_s = min_opt(self.min_s, Some(s));
        self.min_margin = min_opt(self.min_margin, Some(margin));

        let key = (s / TIE_QUANTUM).round() as i64;
        if opts.top_k > 0 && self.admits(key, opts.top_k) {
            let graph6 = to_graph6(g).expect("swept graphs fit graph6");
            let single = Accumulator {
                best: vec![Candidate { key, graph6, s }],
                ..Accumulator::default()
            };
            let this = std::mem::take(self);
            *self = this.merge(single, opts.top_k);
        }
    }

    fn into_summary(self, n: usize, opts: &SweepOptions, elapsed: f64) -> SweepSummary {
        let minimizers = match self.min_s {
            Some(min) => self
                .best
                .into_iter()
                .filter(|c| c.s - min <= TIE_QUANTUM)
                .map(|c| c.graph6)
                .collect(),
            None => Vec::new(),
        };
        SweepSummary {
            n,
            graphs_tested: self.tested,
            violations: self.violations,
            skipped_disconnected: self.skipped,
            eigen_failures: self.failures,
            min_s: self.min_s,
            min_s_margin: self.min_margin,
            minimizers,
            threshold_kind: opts.threshold.to_string(),
            threshold: opts.threshold.threshold(n),
            tolerance: opts.tolerances.cert,
            zero_tolerance: opts.tolerances.zero,
            wall_time_secs: elapsed,
        }
    }
}

type PerOrder = BTreeMap<usize, Accumulator>;

fn merge_maps(mut a: PerOrder, b: PerOrder, top_k: usize) -> PerOrder {
    for (n, acc) in b {
        let merged = match a.remove(&n) {
            Some(prev) => prev.merge(acc, top_k),
            None => acc,
        };
        a.insert(n, merged);
    }
    a
}

/// Evaluates `s(G)` for every graph of `source` against
/// `options.threshold`, returning one summary per order present, ascending.
pub fn sweep(source: &GraphSource, options: &SweepOptions) -> Result<Vec<SweepSummary>, EnumError> {
    let start = Instant::now();
    let per_order = run_in_pool(options.execution, || match source {
        GraphSource::Builtin { n } => sweep_builtin(*n, options),
        GraphSource::File { path } => sweep_file(path, options),
    })??;
    let elapsed = start.elapsed().as_secs_f64();
    Ok(per_order
        .into_iter()
        .map(|(n, acc)| acc.into_summary(n, options, elapsed))
        .collect())
}

fn sweep_builtin(n: usize, opts: &SweepOptions) -> Result<PerOrder, EnumError> {
    // validates n
    ConnectedLabeled::range(n, 0, 0)?;
    let chunks: Vec<u64> = (0..mask_count(n).div_ceil(MASK_CHUNK)).collect();
    let acc = map_reduce(
        opts.execution,
        &chunks,
        Accumulator::default,
        |&c| {
            let mut acc = Accumulator::default();
            let graphs = ConnectedLabeled::range(n, c * MASK_CHUNK, (c + 1) * MASK_CHUNK)
                .expect("order validated above");
            for g in graphs {
                acc.observe(&g, opts);
            }
            acc
        },
        |a, b| a.merge(b, opts.top_k),
    );
    Ok(BTreeMap::from([(n, acc)]))
}

fn sweep_file(path: &std::path::Path, opts: &SweepOptions) -> Result<PerOrder, EnumError> {
    let mut lines = ingest_graph6_file(path)?;
    let mut total = PerOrder::new();
    loop {
        let mut batch = Vec::with_capacity(LINE_BATCH);
        while batch.len() < LINE_BATCH {
            match lines.next_raw() {
                Some(line) => batch.push(line?),
                None => break,
            }
        }
        if batch.is_empty() {
            return Ok(total);
        }
        let partial = map_reduce(
            opts.execution,
            &batch,
            || Ok(PerOrder::new()),
            |(no, text)| -> Result<PerOrder, EnumError> {
                let g = parse_line(*no, text)?;
                let mut acc = Accumulator::default();
                acc.observe(&g, opts);
                Ok(BTreeMap::from([(g.n(), acc)]))
            },
            |a, b| {
                // keep the earliest error in file order
                match (a, b) {
                    (Ok(a), Ok(b)) => Ok(merge_maps(a, b, opts.top_k)),
                    (Err(ea), Err(eb)) => Err(earliest(ea, eb)),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                }
            },
        );
        total = merge_maps(total, partial?, opts.top_k);
    }
}

fn earliest(a: EnumError, b: EnumError) -> EnumError {
    match (&a, &b) {
        (EnumError::Parse { line: la, .. }, EnumError::Parse { line: lb, .. }) if lb < la => b,
        _ => a,
    }
}

fn map_reduce<T, R, I, M, F>(execution: Execution, items: &[T], identity: I, map: M, reduce: F) -> R
where
    T: Sync,
    R: Send,
    I: Fn() -> R + Sync + Send,
    M: Fn(&T) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    match execution {
        Execution::Sequential => items.iter().map(map).fold(identity(), reduce),
        Execution::Parallel | Execution::ParallelWith(_) => {
            parallel_map_reduce(items, identity, map, reduce)
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map_reduce<T, R, I, M, F>(items: &[T], identity: I, map: M, reduce: F) -> R
where
    T: Sync,
    R: Send,
    I: Fn() -> R + Sync + Send,
    M: Fn(&T) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(map).reduce(identity, reduce)
}

#[cfg(not(feature = "parallel"))]
fn parallel_map_reduce<T, R, I, M, F>(items: &[T], identity: I, map: M, reduce: F) -> R
where
    I: Fn() -> R,
    M: Fn(&T) -> R,
    F: Fn(R, R) -> R,
{
    items.iter().map(map).fold(identity(), reduce)
}

#[cfg(feature = "parallel")]
fn run_in_pool<R: Send>(
    execution: Execution,
    f: impl FnOnce() -> R + Send,
) -> Result<R, EnumError> {
    match execution {
        Execution::ParallelWith(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_in_pool<R>(_execution: Execution, f: impl FnOnce() -> R) -> Result<R, EnumError> {
    Ok(f())
}
