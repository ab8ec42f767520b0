//! Exhaustive scans over small multigraph classes: per-graph analysis with
//! hard assertions, the τ conjecture, monotonicity under deletions, and
//! JSON reports.

mod analyze;
mod record;
mod report;
mod scan;

pub use analyze::theorem_pipeline;
pub use record::*;
pub use report::{read_report, to_json, write_report};
pub use scan::{
    derivations, run_scan, scan_monotonicity, scan_tau, Derivation, SCAN_MAX_VERTICES,
};
