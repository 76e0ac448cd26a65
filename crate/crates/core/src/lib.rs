//! Enumeration of hop-constrained s-t simple paths in directed graphs.
//!
//! Given a directed graph, a source `s`, a target `t` and a hop bound `k`,
//! the crate lists every simple path from `s` to `t` with at most `k` edges.
//!
//! The pieces:
//!
//! - [`graph`]: CSR graphs, edge-list ingestion, reversal, induced subgraphs.
//! - [`io`]: edge-list and binary CSR files.
//! - [`preprocess`]: Pre-BFS, a bidirectional `(k-1)`-hop BFS that keeps only
//!   vertices with `sd(s,u) + sd(u,t) <= k` and yields the barrier map.
//! - [`enumerate`]: a brute-force oracle, barrier-learning DFS (BC-DFS) and
//!   the middle-vertex JOIN baseline.
//! - [`pefp`]: the batched expansion-and-verification engine running over a
//!   buffer / processing / external tier model with Batch-DFS batching.
//! - [`bench`]: query generation, suite runs with cross-checking, reports.
//!
//! ```
//! use kpath::graph::{build_graph, EdgeList};
//! use kpath::pefp::{pefp_enumerate, TierConfig};
//! use kpath::preprocess::{pre_bfs, Query};
//! use kpath::enumerate::EnumLimits;
//!
//! let g = build_graph(&EdgeList::new([(0, 1), (0, 2), (1, 3), (2, 3)]));
//! let pre = pre_bfs(&g, Query::new(0, 3, 2).unwrap()).unwrap();
//! let (paths, stats) = pefp_enumerate(&pre, TierConfig::default(), &EnumLimits::default()).unwrap();
//! assert_eq!(paths.len(), 2);
//! assert_eq!(stats.external_writes, 0);
//! ```

pub mod bench;
pub mod enumerate;
pub mod generators;
pub mod graph;
pub mod io;
pub mod pefp;
pub mod preprocess;

pub use enumerate::{EnumError, EnumLimits, Path, ResultSet};
pub use graph::{Graph, VertexId};
pub use preprocess::{pre_bfs, PreprocessResult, Query};
