use std::collections::HashMap;

use crate::graph::{build_graph, reverse, EdgeList, Graph, VertexId};
use crate::preprocess::{bounded_bfs, BarrierMap, Query};

use super::bcdfs::BcDfs;
use super::{EnumError, EnumLimits, Guard, Path, ResultSet};

/// One half-search of JOIN: a graph extended with a virtual endpoint, its
/// reverse, the barrier toward the half's target, and the half's query.
#[derive(Debug)]
struct HalfInstance {
    graph: Graph,
    rev: Graph,
    barrier: BarrierMap,
    query: Query,
}

impl HalfInstance {
    fn new(edges: EdgeList, query: Query) -> Self {
        let graph = build_graph(&edges);
        let rev = reverse(&graph);
        let barrier = BarrierMap::for_target(&rev, query.target, query.k);
        HalfInstance {
            graph,
            rev,
            barrier,
            query,
        }
    }

    fn enumerate(&self, limits: &EnumLimits) -> Result<ResultSet, EnumError> {
        Ok(BcDfs::new(&self.graph, &self.rev)
            .run(self.query, &self.barrier, limits)?
            .results)
    }
}

/// Prepared middle-vertex join for one query.
///
/// Candidate middles are `M = {u != t : sd(s,u) + sd(u,t) <= k}`. The left
/// half enumerates `s ~> u` prefixes through a virtual target hanging off
/// every `u` in `M`; the right half enumerates `u ~> t` suffixes from a
/// virtual source. A joined path is kept iff it is simple and `u` sits at
/// position `ceil(n/2)` of its `n` vertices, so each result appears once.
#[derive(Debug)]
pub struct JoinPlan {
    query: Query,
    vertex_count: usize,
    middles: Vec<VertexId>,
    left: HalfInstance,
    right: HalfInstance,
}

impl JoinPlan {
    /// Runs the bidirectional `k`-hop BFS and builds both half instances.
    /// `rev` must be the reverse of `g`.
    pub fn prepare(g: &Graph, rev: &Graph, q: Query) -> JoinPlan {
        q.validate(g).expect("join: invalid query");
        let n = g.vertex_count();
        let from_source = bounded_bfs(g, q.source, q.k);
        let to_target = bounded_bfs(rev, q.target, q.k);
        let middles: Vec<VertexId> = g
            .vertices()
            .filter(|&u| u != q.target)
            .filter(|&u| match (from_source.get(u), to_target.get(u)) {
                (Some(a), Some(b)) => a + b <= q.k,
                _ => false,
            })
            .collect();

        // A prefix of the middle never continues past t, and a suffix never
        // re-enters s.
        let virtual_id = VertexId::from_index(n);
        let left_k = q.k / 2 + 1;
        let right_k = q.k.div_ceil(2) + 1;

        let mut left_edges: Vec<_> = g.edges().filter(|&(a, _)| a != q.target).collect();
        left_edges.extend(middles.iter().map(|&u| (u, virtual_id)));
        let left = HalfInstance::new(
            EdgeList {
                edges: left_edges,
                declared_vertex_count: Some(n + 1),
            },
            Query::new(q.source, virtual_id, left_k).unwrap(),
        );

        let mut right_edges: Vec<_> = g.edges().filter(|&(_, b)| b != q.source).collect();
        right_edges.extend(middles.iter().map(|&u| (virtual_id, u)));
        let right = HalfInstance::new(
            EdgeList {
                edges: right_edges,
                declared_vertex_count: Some(n + 1),
            },
            Query::new(virtual_id, q.target, right_k).unwrap(),
        );

        JoinPlan {
            query: q,
            vertex_count: n,
            middles,
            left,
            right,
        }
    }

    pub fn middle_candidates(&self) -> &[VertexId] {
        &self.middles
    }

    /// Left prefixes `s ~> u` and right suffixes `u ~> t`, virtual
    /// endpoints stripped.
    pub fn halves(&self, limits: &EnumLimits) -> Result<(Vec<Path>, Vec<Path>), EnumError> {
        let strip_last = |p: &Path| Path(p.0[..p.0.len() - 1].to_vec());
        let strip_first = |p: &Path| Path(p.0[1..].to_vec());
        let left = self
            .left
            .enumerate(limits)?
            .iter()
            .map(strip_last)
            .collect();
        let right = self
            .right
            .enumerate(limits)?
            .iter()
            .map(strip_first)
            .collect();
        Ok((left, right))
    }

    pub fn enumerate(&self, limits: &EnumLimits) -> Result<ResultSet, EnumError> {
        let (left, right) = self.halves(limits)?;
        let mut by_middle: HashMap<VertexId, Vec<&[VertexId]>> = HashMap::new();
        for p in &left {
            by_middle
                .entry(*p.0.last().unwrap())
                .or_default()
                .push(&p.0);
        }

        let k = self.query.k as usize;
        let mut guard = Guard::new(limits);
        // stamp[v] == epoch marks v as used by the current right suffix.
        let mut stamp = vec![0u32; self.vertex_count];
        let mut epoch = 0u32;
        let mut out = Vec::new();
        for suffix in &right {
            let suffix = &suffix.0;
            let Some(prefixes) = by_middle.get(&suffix[0]) else {
                continue;
            };
            epoch += 1;
            for v in suffix {
                stamp[v.index()] = epoch;
            }
            for prefix in prefixes {
                guard.tick()?;
                let n = prefix.len() + suffix.len() - 1;
                if n - 1 > k || prefix.len() != n.div_ceil(2) {
                    continue;
                }
                let (_, head) = prefix.split_last().unwrap();
                if head.iter().any(|v| stamp[v.index()] == epoch) {
                    continue;
                }
                guard.emit()?;
                let mut joined = Vec::with_capacity(n);
                joined.extend_from_slice(head);
                joined.extend_from_slice(suffix);
                out.push(Path(joined));
            }
        }
        Ok(ResultSet::from_paths(out))
    }
}

/// Middle-vertex JOIN enumeration; builds the reverse graph itself.
pub fn join_enumerate(g: &Graph, q: Query, limits: &EnumLimits) -> Result<ResultSet, EnumError> {
    let rev = reverse(g);
    JoinPlan::prepare(g, &rev, q).enumerate(limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::oracle_enumerate;

    fn graph(edges: &[(u32, u32)]) -> Graph {
        build_graph(&EdgeList::new(edges.iter().copied()))
    }

    #[test]
    fn diamond_halves_and_join() {
        let g = graph(&[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let q = Query::new(0, 3, 2).unwrap();
        let plan = JoinPlan::prepare(&g, &reverse(&g), q);
        let m = plan.middle_candidates();
        assert!(m.contains(&VertexId(1)) && m.contains(&VertexId(2)));

        let (left, right) = plan.halves(&EnumLimits::default()).unwrap();
        assert!(left.contains(&Path::from(vec![0, 1])));
        assert!(left.contains(&Path::from(vec![0, 2])));
        assert_eq!(right, vec![Path::from(vec![1, 3]), Path::from(vec![2, 3])]);

        let r = plan.enumerate(&EnumLimits::default()).unwrap();
        assert_eq!(
            r.paths(),
            &[Path::from(vec![0, 1, 3]), Path::from(vec![0, 2, 3])]
        );
    }

    #[test]
    fn middle_position_is_ceil_half() {
        // [0,1,3] has n = 3, so the middle is the 2nd vertex.
        assert_eq!(3usize.div_ceil(2), 2);
        // Joining [0] with [0,1,3] would make 0 the middle: rejected.
        let g = graph(&[(0, 1), (1, 3)]);
        let q = Query::new(0, 3, 2).unwrap();
        let r = join_enumerate(&g, q, &EnumLimits::default()).unwrap();
        assert_eq!(r.paths(), &[Path::from(vec![0, 1, 3])]);
        assert!(!r.has_duplicates());
    }

    #[test]
    fn direct_edge_joins_on_source() {
        let g = graph(&[(0, 1), (0, 2), (2, 1)]);
        let q = Query::new(0, 1, 1).unwrap();
        let r = join_enumerate(&g, q, &EnumLimits::default()).unwrap();
        assert_eq!(r.paths(), &[Path::from(vec![0, 1])]);
    }

    #[test]
    fn odd_k_long_suffix() {
        // k = 3 path s,a,b,t: the middle is a and the suffix a,b,t has
        // ceil(3/2) = 2 hops.
        let g = graph(&[(0, 1), (1, 2), (2, 3)]);
        let q = Query::new(0, 3, 3).unwrap();
        let r = join_enumerate(&g, q, &EnumLimits::default()).unwrap();
        assert_eq!(r.paths(), &[Path::from(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn matches_oracle_on_cyclic_graph() {
        let g = graph(&[
            (0, 1),
            (1, 2),
            (2, 0),
            (2, 3),
            (3, 1),
            (1, 4),
            (4, 3),
            (3, 5),
            (4, 5),
            (0, 4),
        ]);
        for k in 1..=6 {
            let q = Query::new(0, 5, k).unwrap();
            assert_eq!(
                join_enumerate(&g, q, &EnumLimits::default()).unwrap(),
                oracle_enumerate(&g, q, &EnumLimits::default()).unwrap(),
                "k = {k}"
            );
        }
    }
}
