use crate::graph::{reverse, Graph, VertexId};
use crate::pefp::verify::barrier_blocks;
use crate::preprocess::{BarrierMap, Query};

use super::{EnumError, EnumLimits, Guard, Path, ResultSet};

/// A successor rejected by the barrier check during a BC-DFS run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarrierPrune {
    pub vertex: VertexId,
    pub path_len: u32,
    pub barrier: u32,
}

/// Barrier-learning DFS over a graph and its reverse.
///
/// When the subtree below a stack vertex `v` yields nothing, `bar[v]` is
/// raised to `k + 1 - len(S)` so later branches at the same or greater
/// depth skip it. When a subtree does reach the target, the distance found
/// is pushed back through predecessors that are off the stack, lowering any
/// barrier that an earlier failure raised under a different stack.
#[derive(Debug)]
pub struct BcDfs<'g> {
    graph: &'g Graph,
    rev: &'g Graph,
    log_prunes: bool,
}

/// Output of one [`BcDfs::run`].
#[derive(Debug)]
pub struct BcDfsOutcome {
    pub results: ResultSet,
    /// Barrier values when the search finished.
    pub barrier: Vec<u32>,
    /// Barrier-check rejections, recorded only when enabled.
    pub prunes: Vec<BarrierPrune>,
}

impl<'g> BcDfs<'g> {
    /// `rev` must be the reverse of `graph`.
    pub fn new(graph: &'g Graph, rev: &'g Graph) -> Self {
        debug_assert_eq!(graph.vertex_count(), rev.vertex_count());
        BcDfs {
            graph,
            rev,
            log_prunes: false,
        }
    }

    pub fn log_prunes(mut self, on: bool) -> Self {
        self.log_prunes = on;
        self
    }

    pub fn run(
        &self,
        q: Query,
        bar0: &BarrierMap,
        limits: &EnumLimits,
    ) -> Result<BcDfsOutcome, EnumError> {
        q.validate(self.graph).expect("bcdfs: invalid query");
        assert_eq!(bar0.len(), self.graph.vertex_count(), "bcdfs: barrier size");
        let mut run = Run {
            g: self.graph,
            rev: self.rev,
            target: q.target,
            k: q.k,
            bar: bar0.values().to_vec(),
            on_stack: vec![false; self.graph.vertex_count()],
            stack: vec![q.source],
            out: Vec::new(),
            guard: Guard::new(limits),
            prunes: self.log_prunes.then(Vec::new),
            work: Vec::new(),
        };
        run.on_stack[q.source.index()] = true;
        run.search()?;
        Ok(BcDfsOutcome {
            results: ResultSet::from_paths(run.out),
            barrier: run.bar,
            prunes: run.prunes.unwrap_or_default(),
        })
    }
}

/// BC-DFS with the given starting barrier; builds the reverse graph itself.
pub fn bcdfs_enumerate(
    g: &Graph,
    q: Query,
    bar0: &BarrierMap,
    limits: &EnumLimits,
) -> Result<ResultSet, EnumError> {
    let rev = reverse(g);
    Ok(BcDfs::new(g, &rev).run(q, bar0, limits)?.results)
}

struct Run<'g> {
    g: &'g Graph,
    rev: &'g Graph,
    target: VertexId,
    k: u32,
    bar: Vec<u32>,
    on_stack: Vec<bool>,
    stack: Vec<VertexId>,
    out: Vec<Path>,
    guard: Guard,
    prunes: Option<Vec<BarrierPrune>>,
    work: Vec<(VertexId, u32)>,
}

impl Run<'_> {
    /// Explores below the stack top. Returns the shortest hop count to the
    /// target found in this subtree, if any.
    fn search(&mut self) -> Result<Option<u32>, EnumError> {
        self.guard.tick()?;
        let v = *self.stack.last().unwrap();
        let len = (self.stack.len() - 1) as u32;
        if v == self.target {
            self.guard.emit()?;
            self.out.push(Path(self.stack.clone()));
            return Ok(Some(0));
        }

        let mut best: Option<u32> = None;
        if len < self.k {
            let g = self.g;
            for &u in g.successors(v) {
                if self.on_stack[u.index()] {
                    continue;
                }
                let bar = self.bar[u.index()];
                if barrier_blocks(len, bar, self.k) {
                    if let Some(log) = self.prunes.as_mut() {
                        log.push(BarrierPrune {
                            vertex: u,
                            path_len: len,
                            barrier: bar,
                        });
                    }
                    continue;
                }
                self.on_stack[u.index()] = true;
                self.stack.push(u);
                let found = self.search();
                self.stack.pop();
                self.on_stack[u.index()] = false;
                if let Some(f) = found? {
                    best = Some(best.map_or(f + 1, |b| b.min(f + 1)));
                }
            }
        }

        match best {
            None => {
                let raised = self.k + 1 - len;
                let slot = &mut self.bar[v.index()];
                *slot = (*slot).max(raised);
            }
            Some(dist) => self.restore(v, dist),
        }
        Ok(best)
    }

    /// Lowers barriers of off-stack predecessors that a success from `v`
    /// at distance `dist` shows to be too high.
    fn restore(&mut self, v: VertexId, dist: u32) {
        let slot = &mut self.bar[v.index()];
        *slot = (*slot).min(dist);
        self.work.push((v, dist));
        while let Some((x, d)) = self.work.pop() {
            for &w in self.rev.successors(x) {
                if !self.on_stack[w.index()] && self.bar[w.index()] > d + 1 {
                    self.bar[w.index()] = d + 1;
                    self.work.push((w, d + 1));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::oracle_enumerate;
    use crate::graph::{build_graph, EdgeList};

    fn graph(edges: &[(u32, u32)]) -> Graph {
        build_graph(&EdgeList::new(edges.iter().copied()))
    }

    fn exact_barrier(g: &Graph, t: u32, k: u32) -> BarrierMap {
        BarrierMap::for_target(&reverse(g), VertexId(t), k)
    }

    #[test]
    fn learned_trap_prunes_at_same_depth() {
        // s=0, u1=1, u2=2, u3=3, t=4. u2 only reaches t back through u1.
        let g = graph(&[(0, 1), (1, 2), (1, 3), (3, 2), (3, 4), (2, 1)]);
        let rev = reverse(&g);
        let q = Query::new(0, 4, 7).unwrap();
        let bar0 = exact_barrier(&g, 4, 7);
        assert_eq!(bar0.get(VertexId(2)), 3);

        let out = BcDfs::new(&g, &rev)
            .log_prunes(true)
            .run(q, &bar0, &EnumLimits::default())
            .unwrap();
        // With S = (s, u1, u3) the learned bar[u2] = 6 gives 2 + 1 + 6 = 9 > 7.
        assert_eq!(
            out.prunes,
            vec![BarrierPrune {
                vertex: VertexId(2),
                path_len: 2,
                barrier: 6
            }]
        );
        assert_eq!(out.results.paths(), &[Path::from(vec![0, 1, 3, 4])]);
    }

    #[test]
    fn restoration_recovers_path_blocked_by_stale_barrier() {
        // s=0, a=1, b=2, u=3, t=4. Exploring s,a,u fails (u -> a is on the
        // stack) and raises bar[u]; s,b,u,a,t must still be found.
        let g = graph(&[(0, 1), (0, 2), (1, 3), (2, 3), (3, 1), (1, 4)]);
        let q = Query::new(0, 4, 4).unwrap();
        let expected = oracle_enumerate(&g, q, &EnumLimits::default()).unwrap();
        assert!(expected.paths().contains(&Path::from(vec![0, 2, 3, 1, 4])));
        let got = bcdfs_enumerate(&g, q, &exact_barrier(&g, 4, 4), &EnumLimits::default()).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn zero_barrier_still_sound() {
        let g = graph(&[(0, 1), (1, 2), (2, 0), (2, 3), (1, 3), (0, 3)]);
        let q = Query::new(0, 3, 3).unwrap();
        let expected = oracle_enumerate(&g, q, &EnumLimits::default()).unwrap();
        let got = bcdfs_enumerate(&g, q, &BarrierMap::zeros(4), &EnumLimits::default()).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn final_barrier_never_below_start() {
        let g = graph(&[(0, 1), (0, 2), (1, 3), (2, 3), (3, 1), (1, 4), (2, 4)]);
        let q = Query::new(0, 4, 4).unwrap();
        let rev = reverse(&g);
        let bar0 = exact_barrier(&g, 4, 4);
        let out = BcDfs::new(&g, &rev)
            .run(q, &bar0, &EnumLimits::default())
            .unwrap();
        assert!(out.barrier.iter().zip(bar0.values()).all(|(a, b)| a >= b));
    }

    #[test]
    fn overflow_guard() {
        let g = graph(&[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let q = Query::new(0, 3, 2).unwrap();
        assert_eq!(
            bcdfs_enumerate(&g, q, &BarrierMap::zeros(4), &EnumLimits::with_max_paths(1)),
            Err(EnumError::Overflow { limit: 1 })
        );
    }
}
