//! Seeded Monte-Carlo campaigns with statistical verdicts.
//!
//! Every trial derives its seed from `(base_seed, trial_index)`, owns all of
//! its state, and results are reduced in trial order, so a report depends
//! only on its configuration and never on the worker count.

mod animals;
mod bracketing;
mod chernoff;
mod clearings;
mod config;
mod eig_scaling;
mod report;
pub mod stats;
mod tail;
mod threshold;
mod trials;

pub use animals::run_animals;
pub use bracketing::{dense_bracketing, run_bracketing, ORACLE_MAX_ORDER};
pub use chernoff::{exact_yellow_probability, run_chernoff};
pub use clearings::run_clearings;
pub use config::{ExperimentConfig, ExperimentKind};
pub use eig_scaling::{run_eig_scaling, target_size, MIN_SLOPE, SPOT_CHECK_MAX};
pub use report::{Cell, ExperimentReport, Table, Verdict};
pub use tail::{exact_line_tail, run_tail, EXACT_1D_MAX_S, MIN_HITS};
pub use threshold::run_threshold;

use crate::error::Result;

/// Runs the experiment selected by `config.kind`.
pub fn run(config: &ExperimentConfig) -> Result<ExperimentReport> {
    match config.kind {
        ExperimentKind::Tail => run_tail(config),
        ExperimentKind::Chernoff => run_chernoff(config),
        ExperimentKind::Animals => run_animals(config),
        ExperimentKind::Clearings => run_clearings(config),
        ExperimentKind::Bracketing => run_bracketing(config),
        ExperimentKind::EigScaling => run_eig_scaling(config),
        ExperimentKind::Threshold => run_threshold(config),
    }
}
