use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::sweep::SweepRow;

/// Returned runs a size needs before its median counts.
pub const MIN_RETURNED: usize = 10;

/// `values[(n - 1) / 2]` after sorting.
pub fn lower_median(values: &[u64]) -> Option<u64> {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.get(v.len().wrapping_sub(1) / 2).copied()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub dims: Vec<usize>,
    pub runs: usize,
    pub returned: usize,
    pub median_t_half: Option<u64>,
    /// At least [`MIN_RETURNED`] runs returned.
    pub sufficient: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    /// Ordered by cell count.
    pub sizes: Vec<SizeSummary>,
    /// `median[i + 1] / median[i]`; `None` when either side is missing.
    pub ratios: Vec<Option<f64>>,
}

impl ScalingReport {
    pub fn complete(&self) -> bool {
        self.sizes.len() >= 2 && self.sizes.iter().all(|s| s.sufficient)
    }
}

pub fn scaling_report(rows: &[SweepRow]) -> ScalingReport {
    let mut by_size: BTreeMap<(usize, Vec<usize>), Vec<&SweepRow>> = BTreeMap::new();
    for r in rows {
        by_size
            .entry((r.dims.iter().product(), r.dims.clone()))
            .or_default()
            .push(r);
    }
    let sizes: Vec<SizeSummary> = by_size
        .into_iter()
        .map(|((_, dims), group)| {
            let t: Vec<u64> = group.iter().filter_map(|r| r.t_half).collect();
            SizeSummary {
                dims,
                runs: group.len(),
                returned: t.len(),
                median_t_half: lower_median(&t),
                sufficient: t.len() >= MIN_RETURNED,
            }
        })
        .collect();
    let ratios = sizes
        .windows(2)
        .map(|w| match (w[0].median_t_half, w[1].median_t_half) {
            (Some(a), Some(b)) if a > 0 => Some(b as f64 / a as f64),
            _ => None,
        })
        .collect();
    ScalingReport { sizes, ratios }
}

/// Share of runs with an early SuperRiver, per point count.
pub fn superriver_fractions(rows: &[SweepRow]) -> Vec<(usize, f64)> {
    let mut counts: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for r in rows {
        if let Some(hit) = r.superriver_early {
            let e = counts.entry(r.n_points).or_default();
            e.0 += hit as usize;
            e.1 += 1;
        }
    }
    counts
        .into_iter()
        .map(|(n, (hit, total))| (n, hit as f64 / total as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(side: usize, t_half: Option<u64>) -> SweepRow {
        SweepRow {
            mask_id: "m".into(),
            seed: 0,
            dims: vec![side, side],
            n_points: 8,
            returned: t_half.is_some(),
            t_half,
            lambda: None,
            local_reversal_count: None,
            superriver_early: Some(side > 30),
            wall_ms: 0,
            error: None,
            final_checksum: String::new(),
        }
    }

    #[test]
    fn lower_median_of_even_count() {
        assert_eq!(lower_median(&[4, 1, 3, 2]), Some(2));
        assert_eq!(lower_median(&[5]), Some(5));
        assert_eq!(lower_median(&[]), None);
    }

    #[test]
    fn ratios_between_sizes() {
        let mut rows: Vec<SweepRow> = (0..10).map(|k| row(30, Some(100 + k))).collect();
        rows.extend((0..12).map(|k| row(40, Some(220 + k))));
        rows.push(row(40, None));
        let rep = scaling_report(&rows);
        assert_eq!(rep.sizes.len(), 2);
        assert_eq!(rep.sizes[0].median_t_half, Some(104));
        assert_eq!(rep.sizes[1].median_t_half, Some(225));
        assert_eq!(rep.sizes[1].runs, 13);
        assert!(rep.complete());
        assert!((rep.ratios[0].unwrap() - 225.0 / 104.0).abs() < 1e-12);
    }

    #[test]
    fn single_size_and_sparse_sizes() {
        let rep = scaling_report(&[row(30, Some(5))]);
        assert!(rep.ratios.is_empty());
        assert!(!rep.sizes[0].sufficient);
        assert!(!rep.complete());
        let frac = superriver_fractions(&[row(30, None), row(50, None)]);
        assert_eq!(frac, vec![(8, 0.5)]);
    }
}
