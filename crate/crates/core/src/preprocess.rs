//! Pre-BFS: bidirectional `(k-1)`-hop BFS that shrinks the graph to the
//! vertices that can lie on some s-t k-path, and computes the barrier map.

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{induced_subgraph, reverse, Graph, VertexId, VertexMapping};

/// One enumeration task: all simple paths from `source` to `target` with at
/// most `k` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Query {
    pub source: VertexId,
    pub target: VertexId,
    pub k: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("source and target are both {0}")]
    SameEndpoints(VertexId),
    #[error("hop constraint must be at least 1")]
    ZeroHops,
    #[error("vertex {vertex} outside graph of {vertex_count} vertices")]
    OutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
}

impl Query {
    pub fn new(
        source: impl Into<VertexId>,
        target: impl Into<VertexId>,
        k: u32,
    ) -> Result<Self, QueryError> {
        let (source, target) = (source.into(), target.into());
        if source == target {
            return Err(QueryError::SameEndpoints(source));
        }
        if k == 0 {
            return Err(QueryError::ZeroHops);
        }
        Ok(Query { source, target, k })
    }

    /// Checks the query against the vertex range of `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), QueryError> {
        let q = Query::new(self.source, self.target, self.k)?;
        for vertex in [q.source, q.target] {
            if !g.contains(vertex) {
                return Err(QueryError::OutOfRange {
                    vertex,
                    vertex_count: g.vertex_count(),
                });
            }
        }
        Ok(())
    }
}

/// Hop distances from `origin`, exact up to `radius`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMap {
    dist: Vec<u32>,
    origin: VertexId,
    radius: u32,
}

impl DistanceMap {
    pub const UNREACHED: u32 = u32::MAX;

    pub fn get(&self, v: VertexId) -> Option<u32> {
        match self.dist[v.index()] {
            Self::UNREACHED => None,
            d => Some(d),
        }
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn raw(&self) -> &[u32] {
        &self.dist
    }

    pub fn reached(&self) -> impl Iterator<Item = (VertexId, u32)> + '_ {
        self.dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != Self::UNREACHED)
            .map(|(v, &d)| (VertexId::from_index(v), d))
    }
}

/// Frontier BFS from `origin`, stopping after `radius` hops.
pub fn bounded_bfs(g: &Graph, origin: VertexId, radius: u32) -> DistanceMap {
    let mut dist = vec![DistanceMap::UNREACHED; g.vertex_count()];
    dist[origin.index()] = 0;
    let mut queue = VecDeque::from([origin]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v.index()];
        if d == radius {
            continue;
        }
        for &u in g.successors(v) {
            if dist[u.index()] == DistanceMap::UNREACHED {
                dist[u.index()] = d + 1;
                queue.push_back(u);
            }
        }
    }
    DistanceMap {
        dist,
        origin,
        radius,
    }
}

/// Per-vertex lower bound on the hop distance to the target.
///
/// Vertices whose distance exceeds the search radius carry `k + 1`, which
/// makes every barrier check against them fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarrierMap {
    bar: Vec<u32>,
}

impl BarrierMap {
    pub fn from_values(bar: Vec<u32>) -> Self {
        BarrierMap { bar }
    }

    /// All-zero barrier: disables static pruning.
    pub fn zeros(n: usize) -> Self {
        BarrierMap { bar: vec![0; n] }
    }

    /// Barrier from a reverse BFS around the target; unreached vertices get
    /// `k + 1`.
    pub fn from_distances(to_target: &DistanceMap, k: u32) -> Self {
        BarrierMap {
            bar: to_target
                .raw()
                .iter()
                .map(|&d| {
                    if d == DistanceMap::UNREACHED {
                        k + 1
                    } else {
                        d
                    }
                })
                .collect(),
        }
    }

    /// Full-graph barrier from a `k`-hop BFS on the reverse graph.
    pub fn for_target(rev: &Graph, target: VertexId, k: u32) -> Self {
        Self::from_distances(&bounded_bfs(rev, target, k), k)
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> u32 {
        self.bar[v.index()]
    }

    pub fn len(&self) -> usize {
        self.bar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bar.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.bar
    }
}

/// Output of [`pre_bfs`], expressed in the subgraph's id space.
#[derive(Clone, Debug)]
pub struct PreprocessResult {
    pub query: Query,
    pub subgraph: Graph,
    pub mapping: VertexMapping,
    pub barrier: BarrierMap,
    pub source: VertexId,
    pub target: VertexId,
}

impl PreprocessResult {
    /// The query rewritten onto subgraph ids.
    pub fn local_query(&self) -> Query {
        Query {
            source: self.source,
            target: self.target,
            k: self.query.k,
        }
    }

    /// Diagnostic dump: a header, then one `old new barrier` row per kept
    /// vertex.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let q = &self.query;
        let _ = writeln!(out, "# pre-bfs s={} t={} k={}", q.source, q.target, q.k);
        let _ = writeln!(
            out,
            "# kept_vertices={} kept_edges={}",
            self.subgraph.vertex_count(),
            self.subgraph.edge_count()
        );
        let _ = writeln!(out, "# old new barrier");
        for new in self.subgraph.vertices() {
            let _ = writeln!(
                out,
                "{} {} {}",
                self.mapping.to_old(new),
                new,
                self.barrier.get(new)
            );
        }
        out
    }
}

/// Runs Pre-BFS, computing the reverse graph on the fly.
pub fn pre_bfs(g: &Graph, q: Query) -> Result<PreprocessResult, QueryError> {
    pre_bfs_with_reverse(g, &reverse(g), q)
}

/// Runs Pre-BFS with a precomputed reverse graph, so suites over one graph
/// pay for the reversal once.
pub fn pre_bfs_with_reverse(
    g: &Graph,
    rev: &Graph,
    q: Query,
) -> Result<PreprocessResult, QueryError> {
    q.validate(g)?;
    let radius = q.k - 1;
    let from_source = bounded_bfs(g, q.source, radius);
    let to_target = bounded_bfs(rev, q.target, radius);

    let keep = g.vertices().filter(|&v| {
        if v == q.source || v == q.target {
            return true;
        }
        match (from_source.get(v), to_target.get(v)) {
            (Some(a), Some(b)) => a + b <= q.k,
            _ => false,
        }
    });
    let (subgraph, mapping) = induced_subgraph(g, keep);

    let bar = mapping
        .kept()
        .iter()
        .map(|&old| to_target.get(old).unwrap_or(q.k + 1))
        .collect();

    let source = mapping.to_new(q.source).expect("source is always kept");
    let target = mapping.to_new(q.target).expect("target is always kept");
    Ok(PreprocessResult {
        query: q,
        subgraph,
        mapping,
        barrier: BarrierMap::from_values(bar),
        source,
        target,
    })
}

/// Checks that enumeration over the Pre-BFS subgraph, mapped back, matches
/// enumeration over `g`, using the brute-force oracle on both sides.
pub fn validate_reduction(g: &Graph, q: Query) -> bool {
    use crate::enumerate::{oracle_enumerate, EnumLimits};

    let limits = EnumLimits::default();
    let Ok(direct) = oracle_enumerate(g, q, &limits) else {
        return false;
    };
    let Ok(pre) = pre_bfs(g, q) else {
        return false;
    };
    let Ok(reduced) = oracle_enumerate(&pre.subgraph, pre.local_query(), &limits) else {
        return false;
    };
    reduced.map_vertices(&pre.mapping) == direct
}
