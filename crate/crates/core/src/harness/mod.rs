//! Seeded experiment sweeps: configuration, parallel execution, result
//! tables, and size-scaling summaries.

mod config;
pub mod prng;
mod scaling;
mod sweep;

pub use config::{Analysis, ExperimentSpec, NamedMasks, OneOrMany, SweepConfig};
pub use prng::{prng_next, SplitMix64};
pub use scaling::{lower_median, scaling_report, superriver_fractions, ScalingReport, SizeSummary};
pub use sweep::{
    dims_label, run_experiment, sweep, sweep_file, write_csv, write_timing_csv, SweepRow,
    CSV_HEADER,
};
