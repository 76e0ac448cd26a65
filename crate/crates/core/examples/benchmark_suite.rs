//! Sample queries, run every algorithm with the equality gate, print the
//! table and the json-lines form.

use kpath::bench::{emit_report, gen_queries, run_suite, Algorithm, ReportFormat, SuiteOptions};
use kpath::generators::random_graph;
use kpath::pefp::TierConfig;

fn main() {
    let g = random_graph(500, 4.0, 2);
    let qs = gen_queries(&g, 5, 8, 77).unwrap();
    let opts = SuiteOptions {
        jobs: 4,
        ..SuiteOptions::default()
    };
    let report = run_suite(
        &g,
        &qs,
        &Algorithm::ALL,
        TierConfig::new(256, 64).unwrap(),
        &opts,
    )
    .unwrap_or_else(|e| panic!("{e}"));
    print!("{}", emit_report(&report, ReportFormat::Text));
    println!();
    let jsonl = emit_report(&report, ReportFormat::JsonLines);
    print!("{}", jsonl.lines().take(5).collect::<Vec<_>>().join("\n"));
    println!("\n... {} lines", jsonl.lines().count());
}
