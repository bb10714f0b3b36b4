//! Confusion-matrix metrics and the repeated-split benchmark runner.

mod benchmark;
mod metrics;
mod report;

pub use benchmark::{run_benchmark, BenchmarkConfig, Classifier};
pub use metrics::{auc, confusion, ConfusionMatrix};
pub use report::{emit_report, CellResult, EvalReport, ReportFormat};
