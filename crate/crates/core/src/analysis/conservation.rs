use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::engine::{Planes, Run};
use crate::error::{Error, Result};
use crate::filters::{BEFORE, WINDOW_LEN};

/// Incremental `A_F`: push consecutive frames, read the per-cell count for
/// the window that the latest frame completed.
#[derive(Debug)]
pub struct AfAccumulator {
    counts: Vec<i64>,
    frames: VecDeque<Planes>,
    first_time: i64,
}

impl AfAccumulator {
    /// `first_time`: time of the first frame to be pushed.
    pub fn new(cells: usize, first_time: i64) -> Self {
        AfAccumulator {
            counts: vec![0; cells],
            frames: VecDeque::with_capacity(WINDOW_LEN + 1),
            first_time,
        }
    }

    /// Returns `(t, A_F(t))` once six frames are buffered.
    pub fn push(&mut self, frame: &Planes) -> Option<(i64, &[i64])> {
        if self.frames.len() == WINDOW_LEN {
            let old = self.frames.pop_front().expect("full");
            old.add_a_counts(&mut self.counts, -1);
            self.first_time += 1;
        }
        frame.add_a_counts(&mut self.counts, 1);
        self.frames.push_back(frame.clone());
        (self.frames.len() == WINDOW_LEN)
            .then(|| (self.first_time + BEFORE as i64, self.counts.as_slice()))
    }
}

/// Calls `f(t, A_F(t))` for every gap `t` in `from..=to`.
pub fn for_each_a_filter<F>(run: &Run, from: i64, to: i64, mut f: F) -> Result<()>
where
    F: FnMut(i64, &[i64]),
{
    let mut cursor = run.cursor()?;
    let first = from - BEFORE as i64;
    cursor.seek(first);
    let mut acc = AfAccumulator::new(run.cell_count(), first);
    let last = to + (WINDOW_LEN - BEFORE - 1) as i64;
    loop {
        if let Some((t, af)) = acc.push(cursor.planes()) {
            f(t, af);
        }
        if cursor.time() >= last {
            break;
        }
        cursor.forward();
    }
    Ok(())
}

/// Per-cell conservation sums over a closed run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MclResult {
    /// `per_cell_sums[0] / 4`, meaningful when both flags hold.
    pub lambda: i64,
    /// `½(A_F(0)−2) + Σ_{t=1}^{T−1} (A_F(t)−2) + ½(A_F(T)−2)` per cell.
    pub per_cell_sums: Vec<i64>,
    pub all_equal: bool,
    pub divisible_by_4: bool,
}

impl MclResult {
    pub fn holds(&self) -> bool {
        self.all_equal && self.divisible_by_4
    }

    /// SHA-256 of the per-cell sums, for run records.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        for v in &self.per_cell_sums {
            h.update(v.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Evaluates the conservation law on every cell of a returned run.
pub fn mcl_lambda(run: &Run) -> Result<MclResult> {
    let t_half = run.t_half().ok_or(Error::NotReturned)? as i64;
    let mut doubled = vec![0i64; run.cell_count()];
    for_each_a_filter(run, 0, t_half, |t, af| {
        let w = if t == 0 || t == t_half { 1 } else { 2 };
        for (d, &a) in doubled.iter_mut().zip(af) {
            *d += w * (a - 2);
        }
    })?;
    let integral = doubled.iter().all(|d| d % 2 == 0);
    let per_cell_sums: Vec<i64> = doubled.iter().map(|d| d.div_euclid(2)).collect();
    let all_equal = integral && per_cell_sums.windows(2).all(|w| w[0] == w[1]);
    let divisible_by_4 = integral && per_cell_sums.iter().all(|s| s.rem_euclid(4) == 0);
    Ok(MclResult {
        lambda: per_cell_sums[0].div_euclid(4),
        per_cell_sums,
        all_equal,
        divisible_by_4,
    })
}

/// `F(t) = ½(A_F(0)−2) + Σ_{q=1}^{t} (A_F(q)−2)` per cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FField {
    pub t: u64,
    pub values: Vec<i64>,
    pub odd_cells: usize,
}

/// `F(t)` together with the count of odd cells at every `q ≤ t`.
pub fn accumulate_f(run: &Run, t: u64) -> Result<(FField, Vec<usize>)> {
    if let Some(t_half) = run.t_half() {
        if t > t_half {
            return Err(Error::FrameOutOfRange(t as i64));
        }
    }
    let mut doubled = vec![0i64; run.cell_count()];
    let mut census = Vec::with_capacity(t as usize + 1);
    for_each_a_filter(run, 0, t as i64, |q, af| {
        let w = if q == 0 { 1 } else { 2 };
        for (d, &a) in doubled.iter_mut().zip(af) {
            *d += w * (a - 2);
        }
        census.push(doubled.iter().filter(|d| d.rem_euclid(4) == 2).count());
    })?;
    let values: Vec<i64> = doubled.iter().map(|d| d.div_euclid(2)).collect();
    let odd_cells = values.iter().filter(|v| *v % 2 != 0).count();
    Ok((
        FField {
            t,
            values,
            odd_cells,
        },
        census,
    ))
}

/// Global sums of `A_F − 2`, computed from per-frame `N_A` totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainIntegral {
    pub t_half: Option<u64>,
    /// `Σ_v (A_F(q,v) − 2)` for `q = 0..=t_end`.
    pub frame_sums: Vec<i64>,
}

impl MainIntegral {
    /// One pass over frames `-2 ..= t_end + 3`, counting `A` cells per frame.
    pub fn compute(run: &Run) -> Result<MainIntegral> {
        let t_end = run.outcome.t_end() as i64;
        let mut cursor = run.cursor()?;
        cursor.seek(-(BEFORE as i64));
        let mut n_a = Vec::with_capacity(t_end as usize + WINDOW_LEN);
        loop {
            n_a.push(cursor.planes().count_states().0 as i64);
            if cursor.time() >= t_end + (WINDOW_LEN - BEFORE - 1) as i64 {
                break;
            }
            cursor.forward();
        }
        let cells = run.cell_count() as i64;
        let frame_sums = n_a
            .windows(WINDOW_LEN)
            .map(|w| w.iter().sum::<i64>() - 2 * cells)
            .collect();
        Ok(MainIntegral {
            t_half: run.t_half(),
            frame_sums,
        })
    }

    fn doubled_weight(&self, q: u64) -> i64 {
        if q == 0 || Some(q) == self.t_half {
            1
        } else {
            2
        }
    }

    pub fn t_end(&self) -> u64 {
        self.frame_sums.len() as u64 - 1
    }

    /// `S(t0, t)`, half-weighting `q = 0` and `q = t_half`.
    pub fn s(&self, t0: u64, t: u64) -> Result<f64> {
        if t0 > t {
            return Err(Error::Config(format!("empty integral range {t0}..{t}")));
        }
        let limit = self.t_half.unwrap_or(self.t_end());
        if t > limit {
            return Err(Error::FrameOutOfRange(t as i64));
        }
        let doubled: i64 = (t0..=t)
            .map(|q| self.doubled_weight(q) * self.frame_sums[q as usize])
            .sum();
        Ok(doubled as f64 / 2.0)
    }

    /// `S(0, t)` for every `t` up to the mirror (or the last frame).
    pub fn series(&self) -> Vec<f64> {
        let limit = self.t_half.unwrap_or(self.t_end());
        let mut acc = 0i64;
        (0..=limit)
            .map(|q| {
                acc += self.doubled_weight(q) * self.frame_sums[q as usize];
                acc as f64 / 2.0
            })
            .collect()
    }
}

pub fn main_integral(run: &Run, t0: u64, t: u64) -> Result<f64> {
    MainIntegral::compute(run)?.s(t0, t)
}
