use rayon::prelude::*;

use crate::enumerate::{EnumError, EnumLimits, Guard, Path, ResultSet};
use crate::preprocess::PreprocessResult;

use super::tier::{BatchEntry, BatchOrder, PathRecord, TierConfig, TierState, TierStats};
use super::verify::{verify_staged, VerifyInput, VerifyOutcome};

/// Batches at least this many successor slots wide are verified on the
/// rayon pool when parallel verification is enabled.
const PARALLEL_MIN_SLOTS: usize = 512;

/// Hooks into an engine run. Every method defaults to a no-op.
pub trait EngineObserver {
    /// A batch was drawn into the processing area.
    fn on_batch(&mut self, _batch: &[BatchEntry], _state: &TierState) {}
    /// One successor was verified.
    fn on_verify(&mut self, _input: &VerifyInput<'_>, _outcome: &VerifyOutcome) {}
    /// A valid extension was pushed onto the buffer.
    fn on_push(&mut self, _state: &TierState) {}
}

impl EngineObserver for () {}

#[derive(Debug)]
pub struct PefpOutput {
    /// Result paths in original vertex ids.
    pub results: ResultSet,
    pub stats: TierStats,
}

/// Expansion-and-verification enumerator over a Pre-BFS result.
///
/// Starting from the single-vertex path `{s}`, each round draws a batch of
/// successor windows from the tier state, verifies every windowed
/// successor, emits target hits and pushes valid extensions back onto the
/// buffer. The run ends when no batch can be drawn.
#[derive(Clone, Copy, Debug)]
pub struct PefpEngine<'a> {
    pre: &'a PreprocessResult,
    cfg: TierConfig,
    order: BatchOrder,
    parallel: bool,
}

impl<'a> PefpEngine<'a> {
    pub fn new(pre: &'a PreprocessResult, cfg: TierConfig) -> Self {
        PefpEngine {
            pre,
            cfg,
            order: BatchOrder::Dfs,
            parallel: false,
        }
    }

    pub fn order(mut self, order: BatchOrder) -> Self {
        self.order = order;
        self
    }

    /// Verify wide batches concurrently. Outcomes are applied in batch
    /// order, so results and buffer contents match the sequential run.
    pub fn parallel_verify(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn run(&self, limits: &EnumLimits) -> Result<PefpOutput, EnumError> {
        self.run_observed(limits, &mut ())
    }

    pub fn run_observed<O: EngineObserver>(
        &self,
        limits: &EnumLimits,
        observer: &mut O,
    ) -> Result<PefpOutput, EnumError> {
        self.cfg.validate().expect("invalid tier config");
        let pre = self.pre;
        let g = &pre.subgraph;
        let bar = &pre.barrier;
        let (source, target, k) = (pre.source, pre.target, pre.query.k);

        let mut guard = Guard::new(limits);
        let mut state = TierState::new(self.cfg);
        let mut found = Vec::new();
        let mut outcomes = Vec::new();

        state.push(PathRecord::new(vec![source], g.out_degree(source)));
        loop {
            let batch = state.next_batch(self.order);
            if batch.is_empty() {
                break;
            }
            observer.on_batch(&batch, &state);

            let slots: usize = batch.iter().map(BatchEntry::width).sum();
            let parallel = self.parallel && slots >= PARALLEL_MIN_SLOTS;
            if parallel {
                outcomes = batch
                    .par_iter()
                    .flat_map_iter(|entry| {
                        g.successors(entry.last())[entry.start..entry.end]
                            .iter()
                            .map(move |&u| {
                                verify_staged(&VerifyInput {
                                    path: &entry.vertices,
                                    successor: u,
                                    barrier: bar.get(u),
                                    target,
                                    k,
                                })
                            })
                    })
                    .collect();
            }

            let mut next_outcome = 0;
            for entry in &batch {
                for &u in &g.successors(entry.last())[entry.start..entry.end] {
                    guard.tick()?;
                    state.stats_mut().expansions += 1;
                    let input = VerifyInput {
                        path: &entry.vertices,
                        successor: u,
                        barrier: bar.get(u),
                        target,
                        k,
                    };
                    let outcome = if parallel {
                        next_outcome += 1;
                        std::mem::replace(
                            &mut outcomes[next_outcome - 1],
                            VerifyOutcome::InvalidVisited,
                        )
                    } else {
                        verify_staged(&input)
                    };
                    observer.on_verify(&input, &outcome);
                    match outcome {
                        VerifyOutcome::Emit(path) => {
                            guard.emit()?;
                            state.stats_mut().emitted += 1;
                            found.push(path);
                        }
                        VerifyOutcome::Valid => {
                            let mut vertices = Vec::with_capacity(entry.vertices.len() + 1);
                            vertices.extend_from_slice(&entry.vertices);
                            vertices.push(u);
                            debug_assert!(
                                vertices.len() <= k as usize,
                                "stored path reaches k hops"
                            );
                            debug_assert!(u != target);
                            state.push(PathRecord::new(vertices, g.out_degree(u)));
                            observer.on_push(&state);
                        }
                        VerifyOutcome::InvalidBarrier | VerifyOutcome::InvalidVisited => {}
                    }
                }
            }
        }

        let results = ResultSet::from_paths(
            found
                .into_iter()
                .map(|p| Path(pre.mapping.map_back(&p.0)))
                .collect(),
        );
        Ok(PefpOutput {
            results,
            stats: state.into_stats(),
        })
    }
}

/// Batch-DFS ordered run.
pub fn pefp_enumerate(
    pre: &PreprocessResult,
    cfg: TierConfig,
    limits: &EnumLimits,
) -> Result<(ResultSet, TierStats), EnumError> {
    let out = PefpEngine::new(pre, cfg).run(limits)?;
    Ok((out.results, out.stats))
}

/// Oldest-first batching; the comparator for Batch-DFS.
pub fn pefp_enumerate_fifo(
    pre: &PreprocessResult,
    cfg: TierConfig,
    limits: &EnumLimits,
) -> Result<(ResultSet, TierStats), EnumError> {
    let out = PefpEngine::new(pre, cfg)
        .order(BatchOrder::Fifo)
        .run(limits)?;
    Ok((out.results, out.stats))
}
