use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::{Engine, Planes};
use crate::error::Result;
use crate::lattice::{Grid, Mask};

/// Default step cap for a run.
pub const DEFAULT_MAX_STEPS: u64 = 100_000;

/// Outcome of running a start state forward until its first mirror point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOutcome {
    pub returned: bool,
    /// First `t ≥ 1` with no `C` cell, when one was reached.
    pub t_half: Option<u64>,
    /// `N_C(t)` for `t = 0..=t_end`.
    pub nc_series: Vec<u64>,
    #[serde(skip)]
    pub wall_time: Duration,
    /// Digest of the last frame reached.
    pub final_checksum: String,
}

impl RunOutcome {
    pub fn t_end(&self) -> u64 {
        self.nc_series.len() as u64 - 1
    }
}

/// Steps forward from `start` until the first `t ≥ 1` with `N_C(t) = 0` or
/// until `max_steps`. `observer` sees every frame, the start included.
pub fn run_to_mirror_with<F>(
    start: &Grid,
    mask: &Mask,
    max_steps: u64,
    mut observer: F,
) -> Result<RunOutcome>
where
    F: FnMut(u64, &Planes),
{
    let clock = Instant::now();
    let mut engine = Engine::for_grid(mask, start)?;
    let mut planes = engine.load(start)?;
    let mut nc_series = Vec::with_capacity(1024);
    nc_series.push(planes.count_c());
    observer(0, &planes);

    let mut t_half = None;
    for t in 1..=max_steps.max(1) {
        engine.step_in_place(&mut planes);
        let nc = planes.count_c();
        nc_series.push(nc);
        observer(t, &planes);
        if nc == 0 {
            t_half = Some(t);
            break;
        }
    }
    Ok(RunOutcome {
        returned: t_half.is_some(),
        t_half,
        nc_series,
        wall_time: clock.elapsed(),
        final_checksum: planes.checksum(),
    })
}

pub fn run_to_mirror(start: &Grid, mask: &Mask, max_steps: u64) -> Result<RunOutcome> {
    run_to_mirror_with(start, mask, max_steps, |_, _| {})
}

/// A start state, its mask, and what happened when it was run.
#[derive(Clone, Debug)]
pub struct Run {
    pub start: Grid,
    pub mask: Mask,
    pub outcome: RunOutcome,
}

impl Run {
    pub fn execute(start: Grid, mask: Mask, max_steps: u64) -> Result<Run> {
        let outcome = run_to_mirror(&start, &mask, max_steps)?;
        Ok(Run {
            start,
            mask,
            outcome,
        })
    }

    pub fn t_half(&self) -> Option<u64> {
        self.outcome.t_half
    }

    pub fn cursor(&self) -> Result<Cursor> {
        Cursor::new(&self.start, &self.mask)
    }

    pub fn cell_count(&self) -> usize {
        self.start.len()
    }
}

/// Random access to the exact trajectory through a start state, at
/// negative times too. Moving by `k` frames costs `k` steps.
#[derive(Clone, Debug)]
pub struct Cursor {
    engine: Engine,
    planes: Planes,
    t: i64,
}

impl Cursor {
    pub fn new(start: &Grid, mask: &Mask) -> Result<Cursor> {
        let engine = Engine::for_grid(mask, start)?;
        let planes = engine.load(start)?;
        Ok(Cursor {
            engine,
            planes,
            t: 0,
        })
    }

    pub fn time(&self) -> i64 {
        self.t
    }

    pub fn planes(&self) -> &Planes {
        &self.planes
    }

    pub fn forward(&mut self) -> &Planes {
        self.engine.step_in_place(&mut self.planes);
        self.t += 1;
        &self.planes
    }

    pub fn backward(&mut self) -> &Planes {
        self.engine.step_back_in_place(&mut self.planes);
        self.t -= 1;
        &self.planes
    }

    pub fn seek(&mut self, t: i64) -> &Planes {
        while self.t < t {
            self.forward();
        }
        while self.t > t {
            self.backward();
        }
        &self.planes
    }

    /// Frames `from..from + n`, leaving the cursor on the last one.
    pub fn frames(&mut self, from: i64, n: usize) -> Vec<Planes> {
        self.seek(from);
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                self.forward();
            }
            out.push(self.planes.clone());
        }
        out
    }

    pub fn grid(&self) -> Grid {
        self.planes.to_grid()
    }
}
