//! Directed graphs in compressed sparse row form.
//!
//! A [`Graph`] is immutable once built. Successor lists produced by
//! [`build_graph`], [`reverse`] and [`induced_subgraph`] are sorted ascending,
//! which fixes the iteration order of every search in the crate.

use std::fmt;
use std::io::BufRead;

use thiserror::Error;

/// Index of a vertex in a [`Graph`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        debug_assert!(i <= u32::MAX as usize);
        VertexId(i as u32)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Raw edge list as read from a file, before CSR construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub edges: Vec<(VertexId, VertexId)>,
    /// Lower bound on the vertex count; ids beyond the largest endpoint are
    /// isolated vertices.
    pub declared_vertex_count: Option<usize>,
}

impl EdgeList {
    pub fn new<I, A, B>(edges: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<VertexId>,
        B: Into<VertexId>,
    {
        EdgeList {
            edges: edges
                .into_iter()
                .map(|(a, b)| (a.into(), b.into()))
                .collect(),
            declared_vertex_count: None,
        }
    }

    pub fn with_vertex_count(mut self, n: usize) -> Self {
        self.declared_vertex_count = Some(n);
        self
    }
}

/// How [`build_graph_with`] treats parallel edges and self-loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IngestOptions {
    pub dedup: bool,
    pub keep_self_loops: bool,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            dedup: true,
            keep_self_loops: false,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected two vertex ids, found {found} token(s)")]
    Arity { line: usize, found: usize },
    #[error("line {line}: invalid vertex id {token:?}")]
    Token { line: usize, token: String },
    #[error("read error at line {line}: {message}")]
    Io { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Arity { line, .. }
            | ParseError::Token { line, .. }
            | ParseError::Io { line, .. } => *line,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CsrError {
    #[error("offsets must have vertex_count + 1 = {expected} entries, got {actual}")]
    OffsetsLength { expected: usize, actual: usize },
    #[error("offsets must start at 0")]
    OffsetsStart,
    #[error("offsets decrease at vertex {0}")]
    OffsetsNotMonotone(usize),
    #[error("final offset {last} does not match edge count {edges}")]
    OffsetsEnd { last: usize, edges: usize },
    #[error("edge {index} points at vertex {target}, outside 0..{vertex_count}")]
    TargetOutOfRange {
        index: usize,
        target: u32,
        vertex_count: usize,
    },
}

/// Parses whitespace-separated `from to` pairs, one per line.
///
/// Blank lines and lines whose first non-blank character is `#` or `%` are
/// skipped. Vertex ids are taken verbatim.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<EdgeList, ParseError> {
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| ParseError::Io {
            line: line_no,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::Arity {
                line: line_no,
                found: tokens.len(),
            });
        }
        let parse = |tok: &str| {
            tok.parse::<u32>()
                .map(VertexId)
                .map_err(|_| ParseError::Token {
                    line: line_no,
                    token: tok.to_string(),
                })
        };
        edges.push((parse(tokens[0])?, parse(tokens[1])?));
    }
    Ok(EdgeList {
        edges,
        declared_vertex_count: None,
    })
}

pub fn parse_edge_list_str(text: &str) -> Result<EdgeList, ParseError> {
    parse_edge_list(text.as_bytes())
}

/// Directed graph in CSR layout: the successors of `v` are
/// `targets[offsets[v]..offsets[v + 1]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty(0)
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Wraps raw CSR arrays after checking well-formedness.
    pub fn from_csr(
        vertex_count: usize,
        offsets: Vec<usize>,
        targets: Vec<VertexId>,
    ) -> Result<Self, CsrError> {
        if offsets.len() != vertex_count + 1 {
            return Err(CsrError::OffsetsLength {
                expected: vertex_count + 1,
                actual: offsets.len(),
            });
        }
        if offsets[0] != 0 {
            return Err(CsrError::OffsetsStart);
        }
        if let Some(v) = offsets.windows(2).position(|w| w[0] > w[1]) {
            return Err(CsrError::OffsetsNotMonotone(v));
        }
        if offsets[vertex_count] != targets.len() {
            return Err(CsrError::OffsetsEnd {
                last: offsets[vertex_count],
                edges: targets.len(),
            });
        }
        if let Some(index) = targets.iter().position(|t| t.index() >= vertex_count) {
            return Err(CsrError::TargetOutOfRange {
                index,
                target: targets[index].0,
                vertex_count,
            });
        }
        Ok(Graph { offsets, targets })
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.vertex_count()
    }

    #[inline]
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        let i = v.index();
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        let i = v.index();
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn has_edge(&self, from: VertexId, to: VertexId) -> bool {
        self.successors(from).binary_search(&to).is_ok()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[VertexId] {
        &self.targets
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId::from_index)
    }

    /// All edges in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |v| self.successors(v).iter().map(move |&u| (v, u)))
    }
}

/// Builds a CSR graph with the default ingest policy (deduplicate, drop
/// self-loops).
pub fn build_graph(edges: &EdgeList) -> Graph {
    build_graph_with(edges, IngestOptions::default())
}

pub fn build_graph_with(edges: &EdgeList, opts: IngestOptions) -> Graph {
    let max_id = edges
        .edges
        .iter()
        .map(|&(a, b)| a.index().max(b.index()) + 1)
        .max()
        .unwrap_or(0);
    let n = max_id.max(edges.declared_vertex_count.unwrap_or(0));

    let kept = edges
        .edges
        .iter()
        .filter(|(a, b)| opts.keep_self_loops || a != b);

    let mut offsets = vec![0usize; n + 1];
    for &(a, _) in kept.clone() {
        offsets[a.index() + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut targets = vec![VertexId(0); offsets[n]];
    for &(a, b) in kept {
        targets[fill[a.index()]] = b;
        fill[a.index()] += 1;
    }
    for v in 0..n {
        targets[offsets[v]..offsets[v + 1]].sort_unstable();
    }

    if opts.dedup {
        let mut compact = Vec::with_capacity(targets.len());
        let mut new_offsets = Vec::with_capacity(n + 1);
        new_offsets.push(0);
        for v in 0..n {
            let list = &targets[offsets[v]..offsets[v + 1]];
            for (j, &t) in list.iter().enumerate() {
                if j == 0 || list[j - 1] != t {
                    compact.push(t);
                }
            }
            new_offsets.push(compact.len());
        }
        offsets = new_offsets;
        targets = compact;
    }

    Graph { offsets, targets }
}

/// Reverse graph: `(b, a)` is an edge iff `(a, b)` is an edge of `g`.
pub fn reverse(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut offsets = vec![0usize; n + 1];
    for &t in &g.targets {
        offsets[t.index() + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut targets = vec![VertexId(0); g.edge_count()];
    // Visiting sources in ascending order leaves each reversed list sorted.
    for (v, u) in g.edges() {
        targets[fill[u.index()]] = v;
        fill[u.index()] += 1;
    }
    Graph { offsets, targets }
}

const NOT_KEPT: u32 = u32::MAX;

/// Bijection between a kept vertex subset of some graph and the dense id
/// range of the extracted subgraph. New ids follow ascending old-id order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMapping {
    to_old: Vec<VertexId>,
    to_new: Vec<u32>,
}

impl VertexMapping {
    pub fn identity(n: usize) -> Self {
        VertexMapping {
            to_old: (0..n).map(VertexId::from_index).collect(),
            to_new: (0..n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.to_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_old.is_empty()
    }

    pub fn to_old(&self, new: VertexId) -> VertexId {
        self.to_old[new.index()]
    }

    pub fn to_new(&self, old: VertexId) -> Option<VertexId> {
        match self.to_new.get(old.index()) {
            Some(&id) if id != NOT_KEPT => Some(VertexId(id)),
            _ => None,
        }
    }

    /// Kept original ids, indexed by new id.
    pub fn kept(&self) -> &[VertexId] {
        &self.to_old
    }

    pub fn map_back(&self, path: &[VertexId]) -> Vec<VertexId> {
        path.iter().map(|&v| self.to_old(v)).collect()
    }
}

/// Extracts the subgraph induced by `keep`, renumbering vertices densely.
///
/// Panics if `keep` names a vertex outside `g`.
pub fn induced_subgraph<I>(g: &Graph, keep: I) -> (Graph, VertexMapping)
where
    I: IntoIterator<Item = VertexId>,
{
    let n = g.vertex_count();
    let mut to_new = vec![NOT_KEPT; n];
    for v in keep {
        assert!(
            v.index() < n,
            "induced_subgraph: vertex {v} outside graph of {n} vertices"
        );
        to_new[v.index()] = 0;
    }
    let mut to_old = Vec::new();
    for (v, slot) in to_new.iter_mut().enumerate() {
        if *slot != NOT_KEPT {
            *slot = to_old.len() as u32;
            to_old.push(VertexId::from_index(v));
        }
    }

    let mut offsets = Vec::with_capacity(to_old.len() + 1);
    offsets.push(0);
    let mut targets = Vec::new();
    for &old in &to_old {
        // Renumbering is monotone, so filtered lists stay sorted.
        targets.extend(
            g.successors(old)
                .iter()
                .filter(|u| to_new[u.index()] != NOT_KEPT)
                .map(|u| VertexId(to_new[u.index()])),
        );
        offsets.push(targets.len());
    }

    (Graph { offsets, targets }, VertexMapping { to_old, to_new })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId).collect()
    }

    #[test]
    fn parses_pairs_and_skips_comments() {
        let el = parse_edge_list_str("0 1\n1 2\n").unwrap();
        assert_eq!(el, EdgeList::new([(0, 1), (1, 2)]));
        let el = parse_edge_list_str("# c\n3 0\n").unwrap();
        assert_eq!(el, EdgeList::new([(3, 0)]));
        let el = parse_edge_list_str("% konect\n\n  4\t5  \n").unwrap();
        assert_eq!(el, EdgeList::new([(4, 5)]));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_edge_list_str("0 x\n").unwrap_err();
        assert_eq!(err.line(), 1);
        assert!(matches!(err, ParseError::Token { .. }));

        let err = parse_edge_list_str("0 1\n# ok\n1 2 3\n").unwrap_err();
        assert_eq!(err, ParseError::Arity { line: 3, found: 3 });

        let err = parse_edge_list_str("-1 2\n").unwrap_err();
        assert_eq!(err.line(), 1);
    }

    #[test]
    fn builds_csr() {
        let g = build_graph(&EdgeList::new([(0, 1), (0, 2), (1, 2)]));
        assert_eq!(g.offsets(), &[0, 2, 3, 3]);
        assert_eq!(g.targets(), ids(&[1, 2, 2]).as_slice());

        let g = build_graph(&EdgeList::default().with_vertex_count(3));
        assert_eq!(g.offsets(), &[0, 0, 0, 0]);
        assert!(g.targets().is_empty());

        let g = build_graph(&EdgeList::new([(1, 0), (1, 0)]));
        assert_eq!(g.offsets(), &[0, 0, 1]);
        assert_eq!(g.targets(), ids(&[0]).as_slice());
    }

    #[test]
    fn ingest_flags() {
        let el = EdgeList::new([(0, 0), (0, 1), (0, 1), (1, 0)]);
        let g = build_graph(&el);
        assert_eq!(g.edge_count(), 2);
        let g = build_graph_with(
            &el,
            IngestOptions {
                dedup: false,
                keep_self_loops: true,
            },
        );
        assert_eq!(g.successors(VertexId(0)), ids(&[0, 1, 1]).as_slice());
    }

    #[test]
    fn successor_lists_sorted() {
        let g = build_graph(&EdgeList::new([(0, 3), (0, 1), (0, 2), (2, 0)]));
        assert_eq!(g.successors(VertexId(0)), ids(&[1, 2, 3]).as_slice());
    }

    #[test]
    fn reverse_single_edge() {
        let g = Graph::from_csr(2, vec![0, 1, 1], ids(&[1])).unwrap();
        let r = reverse(&g);
        assert_eq!(r.offsets(), &[0, 0, 1]);
        assert_eq!(r.targets(), ids(&[0]).as_slice());
        assert_eq!(reverse(&r), g);
        assert_eq!(reverse(&Graph::default()), Graph::default());
    }

    #[test]
    fn induced_subgraph_keeps_inner_edges() {
        let g = build_graph(&EdgeList::new([(0, 1), (1, 2), (0, 2)]));
        let (sub, map) = induced_subgraph(&g, ids(&[0, 2]));
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(
            sub.edges().collect::<Vec<_>>(),
            vec![(VertexId(0), VertexId(1))]
        );
        assert_eq!(map.to_old(VertexId(1)), VertexId(2));
        assert_eq!(map.to_new(VertexId(1)), None);

        let (full, map) = induced_subgraph(&g, g.vertices());
        assert_eq!(full, g);
        assert_eq!(map, VertexMapping::identity(3));

        let (none, map) = induced_subgraph(&g, std::iter::empty());
        assert!(none.is_empty());
        assert!(map.is_empty());
    }

    #[test]
    fn from_csr_rejects_malformed() {
        assert_eq!(
            Graph::from_csr(2, vec![0, 1], ids(&[1])),
            Err(CsrError::OffsetsLength {
                expected: 3,
                actual: 2
            })
        );
        assert_eq!(
            Graph::from_csr(2, vec![0, 2, 1], ids(&[1, 0])),
            Err(CsrError::OffsetsNotMonotone(1))
        );
        assert!(matches!(
            Graph::from_csr(2, vec![0, 1, 1], ids(&[5])),
            Err(CsrError::TargetOutOfRange { .. })
        ));
        assert_eq!(
            Graph::from_csr(1, vec![1, 1], ids(&[0])),
            Err(CsrError::OffsetsStart)
        );
    }
}
