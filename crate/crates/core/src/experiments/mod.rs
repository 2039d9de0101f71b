//! Seeded trials, CSV sweeps and significance summaries.

mod record;
mod stats;
mod summary;
mod sweep;

pub use record::{read_records, write_records, RunRecord, CSV_HEADER};
pub use stats::{mann_whitney_one_sided, Alternative, Method, StatResult, EXACT_MAX_TOTAL};
pub use summary::{summarize, summarize_file, write_summary, SummaryRow, SUMMARY_HEADER};
pub use sweep::{
    run_trial, run_trial_detailed, sweep, sweep_to_file, TrialConfig, DEFAULT_BUDGET_FACTOR,
};
