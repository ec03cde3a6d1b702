//! Time-series analysis of a finished run: the three phases of `N_C`, the
//! per-cell conservation law, the main integral `S` and the median fit.

mod conservation;
mod phases;
mod symmetry;

pub use conservation::{
    accumulate_f, for_each_a_filter, main_integral, mcl_lambda, AfAccumulator, FField,
    MainIntegral, MclResult,
};
pub use phases::{
    median_series, median_series_with, phase_series, MedianMode, MedianSeries, PhaseSeries,
};
pub use symmetry::{fit_symmetry, fit_symmetry_with, Anchor, FitOptions, Segment, SymmetryFit};

use crate::error::Result;

/// Writes `t,phase0,phase1,phase2,M,phase_id,S`; a phase column holds the
/// value at `t` when `t` falls in that residue and is blank otherwise.
pub fn write_series_csv<W: std::io::Write>(
    out: W,
    nc: &[u64],
    median: &MedianSeries,
    s: &[f64],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "phase0", "phase1", "phase2", "M", "phase_id", "S"])?;
    for (t, &v) in nc.iter().enumerate() {
        let mut row = vec![t.to_string(), String::new(), String::new(), String::new()];
        row[1 + t % 3] = v.to_string();
        row.push(
            median
                .values
                .get(t)
                .map(|m| m.to_string())
                .unwrap_or_default(),
        );
        row.push(
            median
                .phase_id
                .get(t)
                .map(|p| p.to_string())
                .unwrap_or_default(),
        );
        row.push(s.get(t).map(|x| x.to_string()).unwrap_or_default());
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| crate::Error::io("<series>", e))?;
    Ok(())
}
