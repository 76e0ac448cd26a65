//! Newest-first batching keeps the buffer shallow on a layered DAG; oldest-
//! first floods it with short prefixes.

use kpath::enumerate::EnumLimits;
use kpath::generators::layered_dag;
use kpath::pefp::{BatchOrder, PefpEngine, TierConfig};
use kpath::preprocess::{pre_bfs, Query};

fn main() {
    let cfg = TierConfig::new(64, 32).unwrap();
    for (width, k) in [(4, 5), (8, 5), (8, 6), (12, 6)] {
        let (g, s, t) = layered_dag(width, k as usize - 1);
        let pre = pre_bfs(
            &g,
            Query {
                source: s,
                target: t,
                k,
            },
        )
        .unwrap();
        let run = |order| {
            PefpEngine::new(&pre, cfg)
                .order(order)
                .run(&EnumLimits::default())
                .unwrap()
        };
        let dfs = run(BatchOrder::Dfs);
        let fifo = run(BatchOrder::Fifo);
        assert_eq!(dfs.results, fifo.results);
        println!(
            "w={width:<2} k={k}: {:>6} paths  writes dfs={:<6} fifo={:<6}  batches dfs={:<5} fifo={}",
            dfs.results.len(),
            dfs.stats.external_writes,
            fifo.stats.external_writes,
            dfs.stats.batches,
            fifo.stats.batches
        );
    }
}
