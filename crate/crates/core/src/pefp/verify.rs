//! Successor verification: target, barrier and visited checks.
//!
//! [`verify`] runs the checks in sequence. [`verify_staged`] evaluates each
//! stage on its own slice of the input and merges the three verdicts, so the
//! stages carry no data dependency on each other.

use crate::enumerate::Path;
use crate::graph::VertexId;

/// Everything needed to decide whether `successor` extends `path`.
#[derive(Clone, Copy, Debug)]
pub struct VerifyInput<'a> {
    pub path: &'a [VertexId],
    pub successor: VertexId,
    pub barrier: u32,
    pub target: VertexId,
    pub k: u32,
}

impl VerifyInput<'_> {
    /// `len(p)`, the number of edges on the intermediate path.
    #[inline]
    pub fn path_len(&self) -> u32 {
        (self.path.len() - 1) as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyOutcome {
    /// The successor is the target; carries the finished result path.
    Emit(Path),
    Valid,
    InvalidBarrier,
    InvalidVisited,
}

impl VerifyOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyOutcome::Valid)
    }
}

/// True when extending a path of `path_len` edges by a vertex with barrier
/// `barrier` cannot reach the target within `k` hops.
#[inline]
pub fn barrier_blocks(path_len: u32, barrier: u32, k: u32) -> bool {
    u64::from(path_len) + 1 + u64::from(barrier) > u64::from(k)
}

fn emit(path: &[VertexId], target: VertexId) -> VerifyOutcome {
    let mut full = Vec::with_capacity(path.len() + 1);
    full.extend_from_slice(path);
    full.push(target);
    VerifyOutcome::Emit(Path(full))
}

/// Sequential check: target, then barrier, then visited.
pub fn verify(input: &VerifyInput<'_>) -> VerifyOutcome {
    if input.successor == input.target {
        return emit(input.path, input.target);
    }
    if barrier_blocks(input.path_len(), input.barrier, input.k) {
        return VerifyOutcome::InvalidBarrier;
    }
    if input.path.contains(&input.successor) {
        return VerifyOutcome::InvalidVisited;
    }
    VerifyOutcome::Valid
}

/// Target stage: sees only the successor and the target.
#[inline]
pub fn target_stage(successor: VertexId, target: VertexId) -> bool {
    successor == target
}

/// Barrier stage: sees only the path length, barrier and hop bound.
#[inline]
pub fn barrier_stage(path_len: u32, barrier: u32, k: u32) -> bool {
    !barrier_blocks(path_len, barrier, k)
}

/// Visited stage: sees only the path and the successor.
#[inline]
pub fn visited_stage(path: &[VertexId], successor: VertexId) -> bool {
    !path.contains(&successor)
}

/// Verdicts of the three independent stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StageVerdicts {
    pub target_hit: bool,
    pub barrier_ok: bool,
    pub visited_ok: bool,
}

/// Evaluates all three stages on separated inputs. Order of evaluation is
/// irrelevant since each stage is a pure function of its own slice.
pub fn run_stages(input: &VerifyInput<'_>) -> StageVerdicts {
    let visited_ok = visited_stage(input.path, input.successor);
    let barrier_ok = barrier_stage(input.path_len(), input.barrier, input.k);
    let target_hit = target_stage(input.successor, input.target);
    StageVerdicts {
        target_hit,
        barrier_ok,
        visited_ok,
    }
}

/// Combines stage verdicts: a target hit wins, then barrier failure, then
/// visited failure.
pub fn merge_stages(verdicts: StageVerdicts, input: &VerifyInput<'_>) -> VerifyOutcome {
    if verdicts.target_hit {
        emit(input.path, input.target)
    } else if !verdicts.barrier_ok {
        VerifyOutcome::InvalidBarrier
    } else if !verdicts.visited_ok {
        VerifyOutcome::InvalidVisited
    } else {
        VerifyOutcome::Valid
    }
}

pub fn verify_staged(input: &VerifyInput<'_>) -> VerifyOutcome {
    merge_stages(run_stages(input), input)
}
