//! PEFP under a tight memory budget: watch records spill to the external
//! stack and come back.

use kpath::enumerate::{oracle_enumerate, EnumLimits};
use kpath::generators::random_graph;
use kpath::pefp::{pefp_enumerate, FlushPolicy, TierConfig};
use kpath::preprocess::{pre_bfs, Query};

fn main() {
    let g = random_graph(200, 5.0, 8);
    let q = Query::new(3, 9, 5).unwrap();
    let pre = pre_bfs(&g, q).unwrap();
    let expected = oracle_enumerate(&g, q, &EnumLimits::default()).unwrap();
    println!("{} paths\n", expected.len());

    println!(
        "{:>6} {:>6} {:>8}  {:>8} {:>8} {:>8} {:>6}",
        "cap", "theta2", "flush", "writes", "reads", "batches", "peak"
    );
    for (cap, theta2) in [(4096, 1024), (64, 32), (16, 8), (4, 4), (1, 1)] {
        for flush in [FlushPolicy::Segment, FlushPolicy::All] {
            let cfg = TierConfig::new(cap, theta2).unwrap().with_flush(flush);
            let (results, stats) = pefp_enumerate(&pre, cfg, &EnumLimits::default()).unwrap();
            assert_eq!(results, expected);
            println!(
                "{cap:>6} {theta2:>6} {:>8}  {:>8} {:>8} {:>8} {:>6}",
                format!("{flush:?}").to_lowercase(),
                stats.external_writes,
                stats.external_reads,
                stats.batches,
                stats.peak_buffer
            );
        }
    }
}
