use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::enumerate::{
    oracle_enumerate, BcDfs, EnumError, EnumLimits, JoinPlan, Path, ResultSet, DEFAULT_MAX_PATHS,
};
use crate::graph::{reverse, Graph};
use crate::pefp::{BatchOrder, PefpEngine, TierConfig, TierStats};
use crate::preprocess::{pre_bfs_with_reverse, BarrierMap, Query, QueryError};

use super::queries::QuerySet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Oracle,
    BcDfs,
    Join,
    /// PEFP with the configured batching order.
    Pefp,
    /// PEFP with oldest-first batching regardless of configuration.
    PefpFifo,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Oracle,
        Algorithm::BcDfs,
        Algorithm::Join,
        Algorithm::Pefp,
        Algorithm::PefpFifo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Oracle => "oracle",
            Algorithm::BcDfs => "bcdfs",
            Algorithm::Join => "join",
            Algorithm::Pefp => "pefp",
            Algorithm::PefpFifo => "pefp-fifo",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown algorithm `{0}` (expected oracle, bcdfs, join, pefp or pefp-fifo)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Ok,
    Overflow,
    Timeout,
}

impl RunStatus {
    pub fn name(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Overflow => "overflow",
            RunStatus::Timeout => "timeout",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub repetitions: usize,
    /// Wall-clock budget for each enumeration run.
    pub timeout: Option<Duration>,
    pub max_paths: usize,
    /// Worker threads for running queries concurrently; 1 runs inline.
    pub jobs: usize,
    /// Zero every timing field, for byte-stable reports.
    pub no_timing: bool,
    /// Batching order used by [`Algorithm::Pefp`].
    pub batching: BatchOrder,
    pub parallel_verify: bool,
    /// Keep each query's result set in [`RunReport::paths`].
    pub keep_paths: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            repetitions: 3,
            timeout: None,
            max_paths: DEFAULT_MAX_PATHS,
            jobs: 1,
            no_timing: false,
            batching: BatchOrder::Dfs,
            parallel_verify: false,
            keep_paths: false,
        }
    }
}

/// One algorithm on one query, averaged over repetitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub query: Query,
    /// `None` unless the status is ok.
    pub count: Option<u64>,
    pub t1_ns: u64,
    pub t2_ns: u64,
    pub stats: Option<TierStats>,
    pub status: RunStatus,
}

impl RunRecord {
    pub fn total_ns(&self) -> u64 {
        self.t1_ns + self.t2_ns
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub queries: usize,
    pub ok: usize,
    pub avg_t1_ns: f64,
    pub avg_t2_ns: f64,
    pub avg_total_ns: f64,
    pub avg_count: f64,
}

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    /// Query order, then algorithm order.
    pub records: Vec<RunRecord>,
    /// Agreed result set per query; filled only with `keep_paths`.
    pub paths: Vec<(Query, ResultSet)>,
}

impl RunReport {
    /// Averages over the ok records of each algorithm, in first-seen order.
    pub fn summaries(&self) -> Vec<AlgorithmSummary> {
        let mut order: Vec<Algorithm> = Vec::new();
        for r in &self.records {
            if !order.contains(&r.algorithm) {
                order.push(r.algorithm);
            }
        }
        order
            .into_iter()
            .map(|a| {
                let all: Vec<&RunRecord> =
                    self.records.iter().filter(|r| r.algorithm == a).collect();
                let ok: Vec<&RunRecord> = all
                    .iter()
                    .copied()
                    .filter(|r| r.status == RunStatus::Ok)
                    .collect();
                let avg = |f: &dyn Fn(&RunRecord) -> u64| {
                    if ok.is_empty() {
                        0.0
                    } else {
                        ok.iter().map(|r| f(r) as f64).sum::<f64>() / ok.len() as f64
                    }
                };
                AlgorithmSummary {
                    algorithm: a,
                    queries: all.len(),
                    ok: ok.len(),
                    avg_t1_ns: avg(&|r| r.t1_ns),
                    avg_t2_ns: avg(&|r| r.t2_ns),
                    avg_total_ns: avg(&|r| r.total_ns()),
                    avg_count: avg(&|r| r.count.unwrap_or(0)),
                }
            })
            .collect()
    }
}

/// Two algorithms disagreeing on one query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub query: Query,
    pub reference: Algorithm,
    pub other: Algorithm,
    pub reference_count: usize,
    pub other_count: usize,
    /// First path in sorted order found by only one side.
    pub path: Path,
    /// True when `path` came from `reference`.
    pub only_in_reference: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &self.query;
        writeln!(
            f,
            "result mismatch on s={} t={} k={}",
            q.source, q.target, q.k
        )?;
        writeln!(f, "  {}: {} paths", self.reference, self.reference_count)?;
        writeln!(f, "  {}: {} paths", self.other, self.other_count)?;
        let (has, lacks) = if self.only_in_reference {
            (self.reference, self.other)
        } else {
            (self.other, self.reference)
        };
        write!(
            f,
            "  path [{}] reported by {has} but not {lacks}",
            self.path
        )
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("{0}")]
    Mismatch(Box<Counterexample>),
    #[error("query {index}: {source}")]
    Query { index: usize, source: QueryError },
    #[error("thread pool: {0}")]
    Pool(String),
}

struct QueryOutcome {
    records: Vec<RunRecord>,
    results: Vec<(Algorithm, ResultSet)>,
}

/// Runs each selected algorithm on each query, timing preprocessing (`t1`)
/// and enumeration (`t2`) separately, then checks that every algorithm that
/// finished agrees. Overflow and timeout are recorded per query; a
/// disagreement aborts with the first counterexample in query order.
pub fn run_suite(
    g: &Graph,
    qs: &QuerySet,
    algorithms: &[Algorithm],
    cfg: TierConfig,
    opts: &SuiteOptions,
) -> Result<RunReport, SuiteError> {
    for (index, q) in qs.queries.iter().enumerate() {
        q.validate(g)
            .map_err(|source| SuiteError::Query { index, source })?;
    }
    let rev = reverse(g);
    let ctx = Ctx {
        g,
        rev: &rev,
        cfg,
        opts,
    };
    let outcomes: Vec<QueryOutcome> = if opts.jobs <= 1 {
        qs.queries
            .iter()
            .map(|&q| ctx.run_query(q, algorithms))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| SuiteError::Pool(e.to_string()))?;
        pool.install(|| {
            qs.queries
                .par_iter()
                .map(|&q| ctx.run_query(q, algorithms))
                .collect()
        })
    };

    let mut report = RunReport::default();
    for (q, outcome) in qs.queries.iter().zip(outcomes) {
        if let Some(cx) = disagreement(*q, &outcome.results) {
            return Err(SuiteError::Mismatch(Box::new(cx)));
        }
        report.records.extend(outcome.records);
        if opts.keep_paths {
            if let Some((_, r)) = outcome.results.into_iter().next() {
                report.paths.push((*q, r));
            }
        }
    }
    Ok(report)
}

/// Equality gate only: one unrepeated, untimed pass over the queries.
pub fn check_suite(
    g: &Graph,
    qs: &QuerySet,
    algorithms: &[Algorithm],
    cfg: TierConfig,
    opts: &SuiteOptions,
) -> Result<RunReport, SuiteError> {
    let opts = SuiteOptions {
        repetitions: 1,
        no_timing: true,
        ..opts.clone()
    };
    run_suite(g, qs, algorithms, cfg, &opts)
}

fn disagreement(q: Query, results: &[(Algorithm, ResultSet)]) -> Option<Counterexample> {
    let (reference, expected) = results.first()?;
    results[1..].iter().find_map(|(other, got)| {
        let (path, only_in_reference) = expected.first_difference(got)?;
        Some(Counterexample {
            query: q,
            reference: *reference,
            other: *other,
            reference_count: expected.len(),
            other_count: got.len(),
            path: path.clone(),
            only_in_reference,
        })
    })
}

struct Ctx<'a> {
    g: &'a Graph,
    rev: &'a Graph,
    cfg: TierConfig,
    opts: &'a SuiteOptions,
}

struct Timed {
    t1: Duration,
    t2: Duration,
    results: ResultSet,
    stats: Option<TierStats>,
}

impl Ctx<'_> {
    fn run_query(&self, q: Query, algorithms: &[Algorithm]) -> QueryOutcome {
        let mut records = Vec::with_capacity(algorithms.len());
        let mut results = Vec::new();
        for &a in algorithms {
            let (record, r) = self.run_repeated(a, q);
            records.push(record);
            if let Some(r) = r {
                results.push((a, r));
            }
        }
        QueryOutcome { records, results }
    }

    fn run_repeated(&self, a: Algorithm, q: Query) -> (RunRecord, Option<ResultSet>) {
        let reps = self.opts.repetitions.max(1);
        let (mut t1, mut t2) = (Duration::ZERO, Duration::ZERO);
        let mut last = None;
        for _ in 0..reps {
            match self.run_once(a, q) {
                Ok(run) => {
                    t1 += run.t1;
                    t2 += run.t2;
                    last = Some(run);
                }
                Err(e) => {
                    let status = match e {
                        EnumError::Overflow { .. } => RunStatus::Overflow,
                        EnumError::Timeout => RunStatus::Timeout,
                    };
                    let record = RunRecord {
                        algorithm: a,
                        query: q,
                        count: None,
                        t1_ns: 0,
                        t2_ns: 0,
                        stats: None,
                        status,
                    };
                    return (record, None);
                }
            }
        }
        let run = last.expect("at least one repetition");
        let ns = |d: Duration| {
            if self.opts.no_timing {
                0
            } else {
                (d.as_nanos() / reps as u128) as u64
            }
        };
        let record = RunRecord {
            algorithm: a,
            query: q,
            count: Some(run.results.len() as u64),
            t1_ns: ns(t1),
            t2_ns: ns(t2),
            stats: run.stats,
            status: RunStatus::Ok,
        };
        (record, Some(run.results))
    }

    fn run_once(&self, a: Algorithm, q: Query) -> Result<Timed, EnumError> {
        let (g, rev) = (self.g, self.rev);
        let limits = |start: Instant| EnumLimits {
            max_paths: self.opts.max_paths,
            deadline: self.opts.timeout.map(|d| start + d),
        };
        let start = Instant::now();
        match a {
            Algorithm::Oracle => {
                let results = oracle_enumerate(g, q, &limits(start))?;
                Ok(Timed {
                    t1: Duration::ZERO,
                    t2: start.elapsed(),
                    results,
                    stats: None,
                })
            }
            Algorithm::BcDfs => {
                let bar = BarrierMap::for_target(rev, q.target, q.k);
                let t1 = start.elapsed();
                let mid = Instant::now();
                let results = BcDfs::new(g, rev).run(q, &bar, &limits(mid))?.results;
                Ok(Timed {
                    t1,
                    t2: mid.elapsed(),
                    results,
                    stats: None,
                })
            }
            Algorithm::Join => {
                let plan = JoinPlan::prepare(g, rev, q);
                let t1 = start.elapsed();
                let mid = Instant::now();
                let results = plan.enumerate(&limits(mid))?;
                Ok(Timed {
                    t1,
                    t2: mid.elapsed(),
                    results,
                    stats: None,
                })
            }
            Algorithm::Pefp | Algorithm::PefpFifo => {
                let pre = pre_bfs_with_reverse(g, rev, q).expect("query validated");
                let t1 = start.elapsed();
                let order = match a {
                    Algorithm::PefpFifo => BatchOrder::Fifo,
                    _ => self.opts.batching,
                };
                let mid = Instant::now();
                let out = PefpEngine::new(&pre, self.cfg)
                    .order(order)
                    .parallel_verify(self.opts.parallel_verify)
                    .run(&limits(mid))?;
                Ok(Timed {
                    t1,
                    t2: mid.elapsed(),
                    results: out.results,
                    stats: Some(out.stats),
                })
            }
        }
    }
}
