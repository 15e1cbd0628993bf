//! File IO, JSON output, SPARQL bundles and remote checking on top of
//! `rdd-core`.

pub mod bundle;
pub mod input;
pub mod json;
pub mod remote;

use std::time::Instant;

use rayon::prelude::*;
use rdd_core::check::{evaluate_constraint, CheckOptions, Report};
use rdd_core::{ConstraintSet, Dataset};

/// Same result as [`rdd_core::check`], with constraints evaluated in
/// parallel and wall time recorded.
pub fn check_parallel(d: &Dataset, set: &ConstraintSet, opts: &CheckOptions) -> Report {
    let start = Instant::now();
    let per_constraint: Vec<_> = set.as_slice().par_iter().map(|c| evaluate_constraint(d, c, opts)).collect();
    let mut report = Report::assemble(per_constraint, set.len(), d.len());
    report.stats.millis = start.elapsed().as_millis() as u64;
    report
}
