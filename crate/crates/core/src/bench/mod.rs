//! Query sampling, timed suite runs with a cross-algorithm equality gate,
//! and report rendering.

mod queries;
mod report;
mod suite;

pub use queries::{gen_queries, GenError, QueryFileError, QuerySet, RETRIES_PER_QUERY};
pub use report::{emit_report, ReportFormat};
pub use suite::{
    check_suite, run_suite, Algorithm, AlgorithmSummary, Counterexample, RunRecord, RunReport,
    RunStatus, SuiteError, SuiteOptions, UnknownAlgorithm,
};
