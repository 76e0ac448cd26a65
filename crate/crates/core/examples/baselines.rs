//! The three reference enumerators side by side: brute force, BC-DFS with
//! barrier learning, and the middle-vertex join.

use std::time::Instant;

use kpath::enumerate::{oracle_enumerate, BcDfs, EnumLimits, JoinPlan};
use kpath::generators::random_graph;
use kpath::graph::reverse;
use kpath::preprocess::{BarrierMap, Query};

fn main() {
    let g = random_graph(300, 6.0, 11);
    let rev = reverse(&g);
    let limits = EnumLimits::default();

    for k in 3..=6 {
        let q = Query::new(1, 2, k).unwrap();

        let t = Instant::now();
        let oracle = oracle_enumerate(&g, q, &limits).unwrap();
        let t_oracle = t.elapsed();

        let t = Instant::now();
        let bar = BarrierMap::for_target(&rev, q.target, k);
        let bc = BcDfs::new(&g, &rev).run(q, &bar, &limits).unwrap();
        let t_bc = t.elapsed();

        let t = Instant::now();
        let plan = JoinPlan::prepare(&g, &rev, q);
        let join = plan.enumerate(&limits).unwrap();
        let t_join = t.elapsed();

        assert_eq!(bc.results, oracle);
        assert_eq!(join, oracle);
        println!(
            "k={k}: {:>6} paths  oracle {:>9.2?}  bcdfs {:>9.2?}  join {:>9.2?} ({} middles)",
            oracle.len(),
            t_oracle,
            t_bc,
            t_join,
            plan.middle_candidates().len()
        );
    }
}
