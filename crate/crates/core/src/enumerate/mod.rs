//! Reference enumerators: brute-force oracle, BC-DFS and the middle-vertex
//! JOIN framework.

mod bcdfs;
mod join;
mod oracle;

use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexMapping};
use crate::preprocess::Query;

pub use bcdfs::{bcdfs_enumerate, BarrierPrune, BcDfs, BcDfsOutcome};
pub use join::{join_enumerate, JoinPlan};
pub use oracle::oracle_enumerate;

/// Default cap on the number of result paths per query.
pub const DEFAULT_MAX_PATHS: usize = 10_000_000;

/// A simple path, stored as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<VertexId>);

impl Path {
    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Number of edges.
    pub fn hops(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<VertexId> = self.0.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// True if this is an s-t path of `g` satisfying the hop bound of `q`.
    pub fn answers(&self, g: &Graph, q: &Query) -> bool {
        self.0.first() == Some(&q.source)
            && self.0.last() == Some(&q.target)
            && self.hops() <= q.k as usize
            && self.is_simple()
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

impl From<Vec<u32>> for Path {
    fn from(v: Vec<u32>) -> Self {
        Path(v.into_iter().map(VertexId).collect())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Result paths of one query, kept in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResultSet {
    paths: Vec<Path>,
}

impl ResultSet {
    pub fn from_paths(mut paths: Vec<Path>) -> Self {
        paths.sort_unstable();
        ResultSet { paths }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Path> {
        self.paths.iter()
    }

    pub fn has_duplicates(&self) -> bool {
        self.paths.windows(2).any(|w| w[0] == w[1])
    }

    /// Rewrites subgraph ids back to original ids.
    pub fn map_vertices(&self, mapping: &VertexMapping) -> ResultSet {
        ResultSet::from_paths(
            self.paths
                .iter()
                .map(|p| Path(mapping.map_back(&p.0)))
                .collect(),
        )
    }

    /// First path (in lexicographic order) present in exactly one of the
    /// two sets, with a flag telling whether it came from `self`.
    pub fn first_difference<'a>(&'a self, other: &'a ResultSet) -> Option<(&'a Path, bool)> {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.paths.get(i), other.paths.get(j)) {
                (None, None) => return None,
                (Some(a), None) => return Some((a, true)),
                (None, Some(b)) => return Some((b, false)),
                (Some(a), Some(b)) => match a.cmp(b) {
                    std::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    std::cmp::Ordering::Less => return Some((a, true)),
                    std::cmp::Ordering::Greater => return Some((b, false)),
                },
            }
        }
    }

    /// One path per line, space-separated ids.
    pub fn write_lines<W: Write>(&self, mut w: W) -> io::Result<()> {
        for p in &self.paths {
            writeln!(w, "{p}")?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a ResultSet {
    type Item = &'a Path;
    type IntoIter = std::slice::Iter<'a, Path>;

    fn into_iter(self) -> Self::IntoIter {
        self.paths.iter()
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("result count exceeded the limit of {limit} paths")]
    Overflow { limit: usize },
    #[error("deadline exceeded")]
    Timeout,
}

/// Resource guards shared by every enumerator.
#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    pub max_paths: usize,
    pub deadline: Option<Instant>,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_paths: DEFAULT_MAX_PATHS,
            deadline: None,
        }
    }
}

impl EnumLimits {
    pub fn with_max_paths(max_paths: usize) -> Self {
        EnumLimits {
            max_paths,
            deadline: None,
        }
    }
}

/// Counts emitted paths and polls the deadline every few thousand steps.
#[derive(Debug)]
pub(crate) struct Guard {
    limits: EnumLimits,
    emitted: usize,
    steps: u32,
}

impl Guard {
    const POLL_INTERVAL: u32 = 4096;

    pub(crate) fn new(limits: &EnumLimits) -> Self {
        Guard {
            limits: *limits,
            emitted: 0,
            steps: 0,
        }
    }

    #[inline]
    pub(crate) fn emit(&mut self) -> Result<(), EnumError> {
        self.emitted += 1;
        if self.emitted > self.limits.max_paths {
            return Err(EnumError::Overflow {
                limit: self.limits.max_paths,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), EnumError> {
        self.steps += 1;
        if self.steps == Self::POLL_INTERVAL {
            self.steps = 0;
            if let Some(deadline) = self.limits.deadline {
                if Instant::now() >= deadline {
                    return Err(EnumError::Timeout);
                }
            }
        }
        Ok(())
    }
}
