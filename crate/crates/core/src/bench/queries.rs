use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::preprocess::{bounded_bfs, Query, QueryError};

/// Attempts allowed per requested query before giving up.
pub const RETRIES_PER_QUERY: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySet {
    pub queries: Vec<Query>,
    pub seed: u64,
    pub k: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("hop constraint must be at least 1")]
    ZeroHops,
    #[error("no vertex has an outgoing edge")]
    NoSources,
    #[error("found only {found} of {wanted} reachable pairs within the retry budget")]
    Exhausted { found: usize, wanted: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryFileError {
    #[error("line {line}: expected `s t k`")]
    Malformed { line: usize },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: QueryError },
}

/// Draws `count` queries whose target is reachable from the source within
/// `k` hops. Sources are uniform over vertices with out-degree > 0, targets
/// uniform over the vertices a `k`-hop BFS reaches.
pub fn gen_queries(g: &Graph, k: u32, count: usize, seed: u64) -> Result<QuerySet, GenError> {
    if k == 0 {
        return Err(GenError::ZeroHops);
    }
    let sources: Vec<VertexId> = g.vertices().filter(|&v| g.out_degree(v) > 0).collect();
    if sources.is_empty() {
        return Err(GenError::NoSources);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut queries = Vec::with_capacity(count);
    let budget = count.saturating_mul(RETRIES_PER_QUERY);
    let mut attempts = 0;
    while queries.len() < count {
        if attempts == budget {
            return Err(GenError::Exhausted {
                found: queries.len(),
                wanted: count,
            });
        }
        attempts += 1;
        let s = sources[rng.gen_range(0..sources.len())];
        let reached: Vec<VertexId> = bounded_bfs(g, s, k)
            .reached()
            .map(|(v, _)| v)
            .filter(|&v| v != s)
            .collect();
        if reached.is_empty() {
            continue;
        }
        let t = reached[rng.gen_range(0..reached.len())];
        queries.push(Query {
            source: s,
            target: t,
            k,
        });
    }
    Ok(QuerySet { queries, seed, k })
}

impl QuerySet {
    /// Header comment, then one `s t k` line per query.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# queries seed={} k={} count={}",
            self.seed,
            self.k,
            self.queries.len()
        );
        for q in &self.queries {
            let _ = writeln!(out, "{} {} {}", q.source, q.target, q.k);
        }
        out
    }

    /// Parses the [`to_text`](Self::to_text) format. The header is
    /// optional; without it seed is 0 and `k` is the largest query bound.
    pub fn parse(text: &str) -> Result<QuerySet, QueryFileError> {
        let mut seed = 0;
        let mut header_k = None;
        let mut queries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                for field in rest.split_whitespace() {
                    if let Some(v) = field.strip_prefix("seed=") {
                        seed = v.parse().unwrap_or(0);
                    } else if let Some(v) = field.strip_prefix("k=") {
                        header_k = v.parse().ok();
                    }
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| QueryFileError::Malformed { line: line_no })?;
            let [s, t, k] = nums[..] else {
                return Err(QueryFileError::Malformed { line: line_no });
            };
            let q = Query::new(s, t, k).map_err(|source| QueryFileError::Invalid {
                line: line_no,
                source,
            })?;
            queries.push(q);
        }
        let k = header_k.unwrap_or_else(|| queries.iter().map(|q| q.k).max().unwrap_or(0));
        Ok(QuerySet { queries, seed, k })
    }
}
