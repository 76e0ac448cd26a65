//! Batched expansion-and-verification enumeration over a tiered memory
//! model.

mod engine;
pub mod tier;
pub mod verify;

pub use engine::{pefp_enumerate, pefp_enumerate_fifo, EngineObserver, PefpEngine, PefpOutput};
pub use tier::{
    batch_dfs, batch_fifo, batch_slots, BatchEntry, BatchOrder, FlushPolicy, PathRecord,
    TierConfig, TierConfigError, TierState, TierStats,
};
pub use verify::{
    barrier_blocks, merge_stages, run_stages, verify, verify_staged, StageVerdicts, VerifyInput,
    VerifyOutcome,
};
