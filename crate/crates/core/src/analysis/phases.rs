use serde::{Deserialize, Serialize};

/// `N_C` split by `t mod 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseSeries {
    /// `phases[p][j] = nc[3j + p]`.
    pub phases: [Vec<u64>; 3],
    pub len: usize,
}

impl PhaseSeries {
    /// Value recorded at time `t`, with its residue.
    pub fn at(&self, t: usize) -> (u8, u64) {
        let p = t % 3;
        (p as u8, self.phases[p][t / 3])
    }
}

pub fn phase_series(nc_series: &[u64]) -> PhaseSeries {
    let mut phases: [Vec<u64>; 3] = Default::default();
    for (t, &v) in nc_series.iter().enumerate() {
        phases[t % 3].push(v);
    }
    PhaseSeries {
        phases,
        len: nc_series.len(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MedianMode {
    /// Middle order statistic.
    #[default]
    Median,
    /// Mean of the three; `phase_id` still follows the middle value.
    Mean,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MedianSeries {
    pub mode: MedianMode,
    pub values: Vec<f64>,
    pub phase_id: Vec<u8>,
}

impl MedianSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Times `t` where `phase_id[t] != phase_id[t - 1]`.
    pub fn changes(&self) -> Vec<usize> {
        (1..self.phase_id.len())
            .filter(|&t| self.phase_id[t] != self.phase_id[t - 1])
            .collect()
    }
}

pub fn median_series(phases: &PhaseSeries) -> MedianSeries {
    median_series_with(phases, MedianMode::Median)
}

/// At each `t` the latest value of every phase seen so far is ranked; the
/// middle one (lower middle while only two phases exist) gives `M` and its
/// residue. Ties keep the previous residue when it is among the tied ones.
pub fn median_series_with(phases: &PhaseSeries, mode: MedianMode) -> MedianSeries {
    let mut values = Vec::with_capacity(phases.len);
    let mut phase_id: Vec<u8> = Vec::with_capacity(phases.len);
    for t in 0..phases.len {
        let mut latest: Vec<(u64, u8)> = (t.saturating_sub(2)..=t)
            .map(|u| {
                let (p, v) = phases.at(u);
                (v, p)
            })
            .collect();
        latest.sort();
        let mid = (latest.len() - 1) / 2;
        let m = latest[mid].0;
        let tied: Vec<u8> = latest
            .iter()
            .filter(|(v, _)| *v == m)
            .map(|(_, p)| *p)
            .collect();
        let id = match phase_id.last() {
            Some(prev) if tied.contains(prev) => *prev,
            _ => latest[mid].1,
        };
        values.push(match mode {
            MedianMode::Median => m as f64,
            MedianMode::Mean => {
                latest.iter().map(|(v, _)| *v as f64).sum::<f64>() / latest.len() as f64
            }
        });
        phase_id.push(id);
    }
    MedianSeries {
        mode,
        values,
        phase_id,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_by_residue() {
        let p = phase_series(&[0, 5, 7, 1, 6, 8]);
        assert_eq!(p.phases, [vec![0, 1], vec![5, 6], vec![7, 8]]);
        let c = phase_series(&[4; 7]);
        assert!(c.phases.iter().all(|ph| ph.iter().all(|&v| v == 4)));
        assert_eq!(c.phases.iter().map(Vec::len).sum::<usize>(), 7);
    }

    #[test]
    fn middle_value_and_its_residue() {
        // t = 5: phase2 = 30 (t=5), phase1 = 10 (t=4), phase0 = 20 (t=3)
        let m = median_series(&phase_series(&[1, 2, 3, 20, 10, 30]));
        assert_eq!(m.values[5], 20.0);
        assert_eq!(m.phase_id[5], 0);
        assert_eq!((m.values[0], m.phase_id[0]), (1.0, 0));
        // two values: lower middle
        assert_eq!((m.values[1], m.phase_id[1]), (1.0, 0));
    }

    #[test]
    fn ties_keep_previous_phase() {
        // t=2: (5,7,6) -> 6 from phase 2; t=3: phase0 becomes 6, tie with phase 2
        let m = median_series(&phase_series(&[5, 7, 6, 6]));
        assert_eq!(m.phase_id[2], 2);
        assert_eq!(m.values[3], 6.0);
        assert_eq!(m.phase_id[3], 2);
    }

    #[test]
    fn mean_mode() {
        let m = median_series_with(&phase_series(&[3, 6, 9]), MedianMode::Mean);
        assert_eq!(m.values[2], 6.0);
        assert_eq!(m.phase_id[2], 1);
    }

    #[test]
    fn permutation_symmetric_values() {
        let a = median_series(&phase_series(&[9, 1, 5, 9, 1, 5]));
        let b = median_series(&phase_series(&[1, 5, 9, 1, 5, 9]));
        assert_eq!(a.values[2..], b.values[2..]);
    }
}
