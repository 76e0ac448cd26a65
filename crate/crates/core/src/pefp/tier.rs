//! Tiered storage for intermediate paths.
//!
//! Three areas model the on-chip/off-chip split of the accelerator design:
//! a capacity-bounded buffer stack, the processing batch drawn from it, and
//! an unbounded external stack that absorbs buffer overflow. Moves between
//! buffer and external store are counted in [`TierStats`].

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::graph::VertexId;

/// Intermediate path plus the window of its last vertex's successors that
/// has been handed out so far. Successors `nbr_end..nbr_last` are pending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathRecord {
    pub vertices: Vec<VertexId>,
    pub nbr_start: usize,
    pub nbr_end: usize,
    /// Out-degree of the last vertex.
    pub nbr_last: usize,
}

impl PathRecord {
    pub fn new(vertices: Vec<VertexId>, out_degree: usize) -> Self {
        PathRecord {
            vertices,
            nbr_start: 0,
            nbr_end: 0,
            nbr_last: out_degree,
        }
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("path record is never empty")
    }

    pub fn pending(&self) -> usize {
        self.nbr_last - self.nbr_end
    }

    pub fn is_consumed(&self) -> bool {
        self.nbr_end == self.nbr_last
    }
}

/// One processing-area slot: a path and the successor window to verify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatchEntry {
    pub vertices: Vec<VertexId>,
    pub start: usize,
    pub end: usize,
}

impl BatchEntry {
    pub fn last(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn width(&self) -> usize {
        self.end - self.start
    }
}

/// Total successor slots claimed by a batch.
pub fn batch_slots(batch: &[BatchEntry]) -> usize {
    batch.iter().map(BatchEntry::width).sum()
}

/// Which end of the buffer batches are drawn from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BatchOrder {
    /// Newest (longest) paths first: the buffer is a stack.
    #[default]
    Dfs,
    /// Oldest (shortest) paths first.
    Fifo,
}

/// What leaves the buffer when it is full.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FlushPolicy {
    /// The oldest `refill_batch` records.
    #[default]
    Segment,
    /// Everything.
    All,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TierConfigError {
    #[error("{0} must be at least 1")]
    Zero(&'static str),
    #[error("refill batch {refill} exceeds buffer capacity {capacity}")]
    RefillTooLarge { refill: usize, capacity: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TierConfig {
    /// Maximum records held in the buffer.
    pub buffer_capacity: usize,
    /// Maximum successor slots per processing batch.
    pub processing_capacity: usize,
    /// Records moved per external read and per segment flush.
    pub refill_batch: usize,
    pub flush: FlushPolicy,
}

impl TierConfig {
    pub const DEFAULT_BUFFER_CAPACITY: usize = 4096;
    pub const DEFAULT_PROCESSING_CAPACITY: usize = 1024;

    /// Config with the refill batch defaulted to half the buffer.
    pub fn new(
        buffer_capacity: usize,
        processing_capacity: usize,
    ) -> Result<Self, TierConfigError> {
        let cfg = TierConfig {
            buffer_capacity,
            processing_capacity,
            refill_batch: (buffer_capacity / 2).max(1),
            flush: FlushPolicy::Segment,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_refill_batch(mut self, refill_batch: usize) -> Result<Self, TierConfigError> {
        self.refill_batch = refill_batch;
        self.validate()?;
        Ok(self)
    }

    pub fn with_flush(mut self, flush: FlushPolicy) -> Self {
        self.flush = flush;
        self
    }

    pub fn validate(&self) -> Result<(), TierConfigError> {
        if self.buffer_capacity == 0 {
            return Err(TierConfigError::Zero("buffer capacity"));
        }
        if self.processing_capacity == 0 {
            return Err(TierConfigError::Zero("processing capacity"));
        }
        if self.refill_batch == 0 {
            return Err(TierConfigError::Zero("refill batch"));
        }
        if self.refill_batch > self.buffer_capacity {
            return Err(TierConfigError::RefillTooLarge {
                refill: self.refill_batch,
                capacity: self.buffer_capacity,
            });
        }
        Ok(())
    }
}

impl Default for TierConfig {
    fn default() -> Self {
        TierConfig::new(
            Self::DEFAULT_BUFFER_CAPACITY,
            Self::DEFAULT_PROCESSING_CAPACITY,
        )
        .expect("default tier config is valid")
    }
}

/// Movement counters for one engine run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TierStats {
    pub external_writes: u64,
    pub external_reads: u64,
    pub batches: u64,
    pub expansions: u64,
    pub emitted: u64,
    pub peak_buffer: u64,
    pub peak_batch_slots: u64,
}

impl TierStats {
    /// Flat `key=value` block, one counter per line.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        for (key, value) in [
            ("external_writes", self.external_writes),
            ("external_reads", self.external_reads),
            ("batches", self.batches),
            ("expansions", self.expansions),
            ("emitted", self.emitted),
            ("peak_buffer", self.peak_buffer),
            ("peak_batch_slots", self.peak_batch_slots),
        ] {
            let _ = writeln!(out, "{key}={value}");
        }
        out
    }
}

/// Walks the buffer from its top, handing out successor windows until
/// `theta` slots are claimed or the buffer is exhausted.
///
/// Fully consumed records leave the buffer; a record whose successors did
/// not fit keeps its advanced cursor and stays in place.
pub fn batch_dfs(buffer: &mut Vec<PathRecord>, theta: usize) -> Vec<BatchEntry> {
    take_batch(buffer, theta, BatchOrder::Dfs)
}

/// Like [`batch_dfs`] but walks from the bottom (oldest record) up.
pub fn batch_fifo(buffer: &mut Vec<PathRecord>, theta: usize) -> Vec<BatchEntry> {
    take_batch(buffer, theta, BatchOrder::Fifo)
}

fn take_batch(buffer: &mut Vec<PathRecord>, theta: usize, order: BatchOrder) -> Vec<BatchEntry> {
    assert!(theta >= 1, "batch threshold must be at least 1");
    let n = buffer.len();
    let position = |step: usize| match order {
        BatchOrder::Dfs => n - 1 - step,
        BatchOrder::Fifo => step,
    };

    let mut cnt = 0;
    let mut visited = 0;
    while visited < n {
        let rec = &mut buffer[position(visited)];
        let ptr1 = rec.nbr_end;
        let ptr2 = if ptr1 + (theta - cnt) < rec.nbr_last {
            ptr1 + (theta - cnt)
        } else {
            rec.nbr_last
        };
        rec.nbr_start = ptr1;
        rec.nbr_end = ptr2;
        cnt += ptr2 - ptr1;
        visited += 1;
        if cnt >= theta {
            break;
        }
    }

    // Visited records form a contiguous run at the walking end.
    let run: Vec<PathRecord> = match order {
        BatchOrder::Dfs => {
            let mut tail = buffer.split_off(n - visited);
            tail.reverse();
            tail
        }
        BatchOrder::Fifo => buffer.drain(..visited).collect(),
    };
    let mut batch = Vec::with_capacity(run.len());
    let mut kept = Vec::new();
    for rec in run {
        if rec.is_consumed() {
            batch.push(BatchEntry {
                vertices: rec.vertices,
                start: rec.nbr_start,
                end: rec.nbr_end,
            });
        } else {
            batch.push(BatchEntry {
                vertices: rec.vertices.clone(),
                start: rec.nbr_start,
                end: rec.nbr_end,
            });
            kept.push(rec);
        }
    }
    match order {
        BatchOrder::Dfs => buffer.extend(kept.into_iter().rev()),
        BatchOrder::Fifo => {
            buffer.splice(0..0, kept);
        }
    }
    batch
}

/// Buffer, external store and counters for one engine run.
#[derive(Debug)]
pub struct TierState {
    cfg: TierConfig,
    buffer: Vec<PathRecord>,
    external: Vec<PathRecord>,
    stats: TierStats,
}

impl TierState {
    pub fn new(cfg: TierConfig) -> Self {
        TierState {
            cfg,
            buffer: Vec::with_capacity(cfg.buffer_capacity.min(1 << 16)),
            external: Vec::new(),
            stats: TierStats::default(),
        }
    }

    pub fn config(&self) -> &TierConfig {
        &self.cfg
    }

    pub fn buffer(&self) -> &[PathRecord] {
        &self.buffer
    }

    pub fn external(&self) -> &[PathRecord] {
        &self.external
    }

    pub fn stats(&self) -> &TierStats {
        &self.stats
    }

    pub(crate) fn stats_mut(&mut self) -> &mut TierStats {
        &mut self.stats
    }

    pub fn into_stats(self) -> TierStats {
        self.stats
    }

    /// Pushes onto the buffer, flushing first if it is full.
    pub fn push(&mut self, record: PathRecord) {
        if self.buffer.len() >= self.cfg.buffer_capacity {
            self.flush();
        }
        self.buffer.push(record);
        self.stats.peak_buffer = self.stats.peak_buffer.max(self.buffer.len() as u64);
    }

    /// Moves buffer records to the external store per the flush policy.
    pub fn flush(&mut self) {
        let n = match self.cfg.flush {
            FlushPolicy::Segment => self.cfg.refill_batch.min(self.buffer.len()),
            FlushPolicy::All => self.buffer.len(),
        };
        self.external.extend(self.buffer.drain(..n));
        self.stats.external_writes += n as u64;
    }

    /// Next processing batch: from the buffer if it holds anything,
    /// otherwise after refilling it from the external store's tail. Empty
    /// means the search is finished.
    pub fn next_batch(&mut self, order: BatchOrder) -> Vec<BatchEntry> {
        if self.buffer.is_empty() && !self.external.is_empty() {
            let n = self.cfg.refill_batch.min(self.external.len());
            let at = self.external.len() - n;
            self.buffer.extend(self.external.drain(at..));
            self.stats.external_reads += n as u64;
            self.stats.peak_buffer = self.stats.peak_buffer.max(self.buffer.len() as u64);
        }
        if self.buffer.is_empty() {
            return Vec::new();
        }
        self.stats.batches += 1;
        let batch = take_batch(&mut self.buffer, self.cfg.processing_capacity, order);
        self.stats.peak_batch_slots = self.stats.peak_batch_slots.max(batch_slots(&batch) as u64);
        batch
    }
}
