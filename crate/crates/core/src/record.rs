//! JSON run records: everything needed to replay a run plus the results of
//! the analyses asked for. No timestamps, so equal inputs give equal bytes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{
    fit_symmetry, mcl_lambda, median_series, phase_series, MainIntegral, MclResult, SymmetryFit,
};
use crate::engine::{Run, RunOutcome};
use crate::error::{Error, Result};
use crate::lattice::{Grid, Mask};
use crate::structures::{
    detect_local_reversals, LocalReversalEvent, DEFAULT_THRESHOLD, DEFAULT_WINDOW,
};

pub const RECORD_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub mask_id: String,
    pub n_points: usize,
    pub seed: u64,
    pub max_steps: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MclSummary {
    pub lambda: i64,
    pub all_equal: bool,
    pub divisible_by_4: bool,
    /// SHA-256 of the per-cell sums.
    pub per_cell_digest: String,
}

impl From<&MclResult> for MclSummary {
    fn from(m: &MclResult) -> Self {
        MclSummary {
            lambda: m.lambda,
            all_equal: m.all_equal,
            divisible_by_4: m.divisible_by_4,
            per_cell_digest: m.digest(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub fit: SymmetryFit,
    /// `A` and `B` counts at the mirror, for comparison with the fitted `m0`.
    pub mirror_white: u64,
    pub mirror_blue: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mcl: Option<MclSummary>,
    /// `S(0, t)` per frame, up to the mirror or the last frame.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_series: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub events: Option<Vec<LocalReversalEvent>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryReport>,
}

/// Which analyses to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub mcl: bool,
    pub integral: bool,
    pub symmetry: bool,
    pub events: bool,
}

impl AnalysisRequest {
    pub fn all() -> Self {
        AnalysisRequest {
            mcl: true,
            integral: true,
            symmetry: true,
            events: true,
        }
    }

    /// Everything that applies to this run.
    pub fn applicable(run: &Run) -> Self {
        let closed = run.outcome.returned;
        AnalysisRequest {
            mcl: closed,
            integral: true,
            symmetry: closed,
            events: true,
        }
    }
}

pub fn analyze_run(run: &Run, req: AnalysisRequest) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::default();
    if req.mcl {
        report.mcl = Some(MclSummary::from(&mcl_lambda(run)?));
    }
    if req.integral || req.symmetry {
        let s = MainIntegral::compute(run)?.series();
        if req.symmetry {
            let t_half = run.t_half().ok_or(Error::NotReturned)?;
            let median = median_series(&phase_series(&run.outcome.nc_series));
            let fit = fit_symmetry(&median, &s, t_half)?;
            let mut cursor = run.cursor()?;
            let (a, b, _) = cursor.seek(t_half as i64).count_states();
            report.symmetry = Some(SymmetryReport {
                fit,
                mirror_white: a,
                mirror_blue: b,
            });
        }
        if req.integral {
            report.s_series = Some(s);
        }
    }
    if req.events {
        report.events = Some(detect_local_reversals(
            &run.outcome.nc_series,
            DEFAULT_THRESHOLD,
            DEFAULT_WINDOW,
        ));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub version: u32,
    pub metadata: RunMetadata,
    pub mask: Mask,
    /// Start state in the text grid format.
    pub start: String,
    pub outcome: RunOutcome,
    #[serde(default)]
    pub analysis: AnalysisReport,
}

impl RunRecord {
    pub fn new(run: &Run, metadata: RunMetadata, analysis: AnalysisReport) -> RunRecord {
        RunRecord {
            version: RECORD_VERSION,
            metadata,
            mask: run.mask.clone(),
            start: run.start.to_text(),
            outcome: run.outcome.clone(),
            analysis,
        }
    }

    /// Rebuilds the run without stepping it again.
    pub fn to_run(&self) -> Result<Run> {
        if self.version != RECORD_VERSION {
            return Err(Error::Unsupported(format!(
                "run record version {}",
                self.version
            )));
        }
        if self.outcome.nc_series.is_empty() {
            return Err(Error::Config("run record has an empty nc_series".into()));
        }
        Ok(Run {
            start: Grid::parse(&self.start)?,
            mask: self.mask.clone(),
            outcome: self.outcome.clone(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<RunRecord> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<RunRecord> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RunRecord::from_json(&text)
    }
}
