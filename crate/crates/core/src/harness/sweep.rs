use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{Analysis, ExperimentSpec, SweepConfig};
use crate::analysis::mcl_lambda;
use crate::engine::{detect_superriver_early, Run};
use crate::error::{Error, Result};
use crate::lattice::random_initial;
use crate::structures::{detect_local_reversals, DEFAULT_THRESHOLD, DEFAULT_WINDOW};

/// Column order of the results table.
pub const CSV_HEADER: [&str; 11] = [
    "mask_id",
    "seed",
    "dims",
    "n_points",
    "returned",
    "t_half",
    "lambda",
    "local_reversal_count",
    "superriver_early",
    "error",
    "final_checksum",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub mask_id: String,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub n_points: usize,
    pub returned: bool,
    pub t_half: Option<u64>,
    pub lambda: Option<i64>,
    pub local_reversal_count: Option<usize>,
    pub superriver_early: Option<bool>,
    /// Kept out of the results table so that it stays reproducible.
    pub wall_ms: u64,
    pub error: Option<String>,
    pub final_checksum: String,
}

impl SweepRow {
    fn sort_key(&self) -> (&str, u64, &[usize], usize) {
        (&self.mask_id, self.seed, &self.dims, self.n_points)
    }
}

pub fn dims_label(dims: &[usize]) -> String {
    dims.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("x")
}

/// Builds the start state, runs it, and applies the requested analyses.
/// Failures land in `error` rather than aborting.
pub fn run_experiment(spec: &ExperimentSpec) -> SweepRow {
    let clock = Instant::now();
    let mut row = SweepRow {
        mask_id: spec.mask_id.clone(),
        seed: spec.seed,
        dims: spec.dims.clone(),
        n_points: spec.n_points,
        returned: false,
        t_half: None,
        lambda: None,
        local_reversal_count: None,
        superriver_early: None,
        wall_ms: 0,
        error: None,
        final_checksum: String::new(),
    };
    if let Err(e) = fill_row(spec, &mut row) {
        log::warn!("{} seed {}: {e}", spec.mask_id, spec.seed);
        row.error = Some(e.to_string());
    }
    row.wall_ms = clock.elapsed().as_millis() as u64;
    row
}

fn fill_row(spec: &ExperimentSpec, row: &mut SweepRow) -> Result<()> {
    let start = random_initial(&spec.dims, &spec.boundary, spec.n_points, spec.seed)?;
    if let Some(horizon) = spec.early_screen {
        row.superriver_early = Some(detect_superriver_early(&start, &spec.mask, horizon)?);
    }
    let run = Run::execute(start, (*spec.mask).clone(), spec.max_steps)?;
    row.returned = run.outcome.returned;
    row.t_half = run.t_half();
    row.final_checksum = run.outcome.final_checksum.clone();
    if spec.analyses.contains(&Analysis::Events) {
        let events =
            detect_local_reversals(&run.outcome.nc_series, DEFAULT_THRESHOLD, DEFAULT_WINDOW);
        row.local_reversal_count = Some(events.len());
    }
    if spec.analyses.contains(&Analysis::Mcl) && run.outcome.returned {
        let mcl = mcl_lambda(&run)?;
        if !mcl.holds() {
            return Err(Error::Unsupported(format!(
                "conservation sums are not a common multiple of 4 (all_equal={}, divisible_by_4={})",
                mcl.all_equal, mcl.divisible_by_4
            )));
        }
        row.lambda = Some(mcl.lambda);
    }
    Ok(())
}

/// Runs every experiment of the sweep on `jobs` worker threads. The rows
/// come back sorted, so the output does not depend on scheduling.
pub fn sweep(specs: &[ExperimentSpec], jobs: usize) -> Result<Vec<SweepRow>> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut rows: Vec<SweepRow> = pool.install(|| specs.par_iter().map(run_experiment).collect());
    rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(rows)
}

/// Loads a config file and runs it.
pub fn sweep_file(path: &std::path::Path, jobs: usize) -> Result<Vec<SweepRow>> {
    let (config, masks) = SweepConfig::load(path)?;
    sweep(&config.expand(&masks)?, jobs)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.mask_id.clone(),
            r.seed.to_string(),
            dims_label(&r.dims),
            r.n_points.to_string(),
            r.returned.to_string(),
            opt(&r.t_half),
            opt(&r.lambda),
            opt(&r.local_reversal_count),
            opt(&r.superriver_early),
            r.error.clone().unwrap_or_default(),
            r.final_checksum.clone(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

/// Wall-clock times, keyed like the results table.
pub fn write_timing_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["mask_id", "seed", "dims", "n_points", "wall_ms"])?;
    for r in rows {
        w.write_record([
            r.mask_id.clone(),
            r.seed.to_string(),
            dims_label(&r.dims),
            r.n_points.to_string(),
            r.wall_ms.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}
