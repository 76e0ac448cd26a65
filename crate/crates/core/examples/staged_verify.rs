//! Successor verification, sequential and as three independent stages, on
//! every check an engine run performs.

use kpath::enumerate::EnumLimits;
use kpath::generators::random_graph;
use kpath::pefp::{
    run_stages, verify, verify_staged, EngineObserver, PefpEngine, TierConfig, VerifyInput,
    VerifyOutcome,
};
use kpath::preprocess::{pre_bfs, Query};

#[derive(Default)]
struct Tally {
    emit: u64,
    valid: u64,
    barrier: u64,
    visited: u64,
    disagreements: u64,
}

impl EngineObserver for Tally {
    fn on_verify(&mut self, input: &VerifyInput<'_>, outcome: &VerifyOutcome) {
        if verify(input) != verify_staged(input) {
            self.disagreements += 1;
        }
        match outcome {
            VerifyOutcome::Emit(_) => self.emit += 1,
            VerifyOutcome::Valid => self.valid += 1,
            VerifyOutcome::InvalidBarrier => self.barrier += 1,
            VerifyOutcome::InvalidVisited => self.visited += 1,
        }
    }
}

fn main() {
    let p: Vec<_> = (0..5).map(kpath::VertexId).collect();
    let input = VerifyInput {
        path: &p,
        successor: 9.into(),
        barrier: 2,
        target: 7.into(),
        k: 6,
    };
    println!(
        "len 4 + 1 + bar 2 vs k 6: {:?} -> {:?}",
        run_stages(&input),
        verify_staged(&input)
    );

    let g = random_graph(150, 6.0, 21);
    let pre = pre_bfs(&g, Query::new(0, 1, 5).unwrap()).unwrap();
    let mut tally = Tally::default();
    let out = PefpEngine::new(&pre, TierConfig::new(32, 16).unwrap())
        .run_observed(&EnumLimits::default(), &mut tally)
        .unwrap();
    println!(
        "{} results; checks: emit={} valid={} barrier-pruned={} visited={} disagreements={}",
        out.results.len(),
        tally.emit,
        tally.valid,
        tally.barrier,
        tally.visited,
        tally.disagreements
    );
}
