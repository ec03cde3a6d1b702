use serde::{Deserialize, Serialize};

use super::phases::MedianSeries;
use crate::error::{Error, Result};

/// A stretch of constant sign, listed from the mirror backwards.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    /// First time of the stretch.
    pub start: u64,
    /// Last time of the stretch.
    pub end: u64,
    pub sign: i8,
    /// Model on this stretch: `offset + k * sign * S(t)`.
    pub offset: f64,
}

/// How a segment's offset is fixed once the sign flips.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Anchor {
    /// The model itself stays continuous across each flip.
    Continuous,
    /// Each earlier segment restarts from the median's value at its
    /// mirror-side end, so jumps at the flips do not accumulate.
    #[default]
    Median,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitOptions {
    /// Earliest time used in the joint fit.
    pub fit_from: u64,
    /// Correlation is measured on `[t_half * corr_from_fraction, t_half]`.
    pub corr_from_fraction: f64,
    pub anchor: Anchor,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            fit_from: 0,
            corr_from_fraction: 0.5,
            anchor: Anchor::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryFit {
    pub k: f64,
    /// Offset of the segment that holds the mirror.
    pub m0: f64,
    pub segments: Vec<Segment>,
    /// RMSE of the joint fit divided by the spread of `M` (plain RMSE when
    /// `M` is flat).
    pub residual: f64,
    /// Pearson correlation of `M` and the model near the mirror.
    pub correlation: f64,
    /// Per-segment `k` from independent fits, where a segment has enough points.
    pub segment_k: Vec<Option<f64>>,
    /// Joint RMSE over the RMSE with one free `(offset, k)` per segment; near
    /// 1 when a single `k` serves the whole run.
    pub k_constancy: f64,
}

impl SymmetryFit {
    pub fn model(&self, s: &[f64], t: u64) -> f64 {
        let seg = self
            .segments
            .iter()
            .find(|g| (g.start..=g.end).contains(&t))
            .expect("t within the fitted range");
        seg.offset + self.k * seg.sign as f64 * s[t as usize]
    }
}

struct Line {
    slope: f64,
    sse: f64,
}

fn least_squares(x: &[f64], y: &[f64]) -> Option<Line> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if sxx <= f64::EPSILON * n * (1.0 + mx * mx) {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse = x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    Some(Line { slope, sse })
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return if sxx == syy { 1.0 } else { 0.0 };
    }
    sxy / (sxx * syy).sqrt()
}

pub fn fit_symmetry(median: &MedianSeries, s: &[f64], t_half: u64) -> Result<SymmetryFit> {
    fit_symmetry_with(median, s, t_half, &FitOptions::default())
}

/// Fits `M(t) ≈ c + k σ(t) S(t)` on `fit_from..=t_half`, walking back from
/// the mirror. `σ` flips at every change of the median's phase and each
/// earlier segment's offset is tied to the flip point (see [`Anchor`]), so
/// `(c, k)` are the only free parameters. The sign next to the mirror is the
/// one that makes `k` positive.
pub fn fit_symmetry_with(
    median: &MedianSeries,
    s: &[f64],
    t_half: u64,
    opts: &FitOptions,
) -> Result<SymmetryFit> {
    let end = t_half as usize;
    if median.len() <= end || s.len() <= end || opts.fit_from >= t_half {
        return Err(Error::Config(format!(
            "series too short for t_half {t_half} (median {}, S {})",
            median.len(),
            s.len()
        )));
    }
    let from = opts.fit_from as usize;
    if s[from..=end].windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::NoSignal);
    }
    let m = &median.values;

    // (last, first) time of each segment, mirror first; σ = +1 next to it
    let mut bounds = vec![(end, from)];
    for t in (from..end).rev() {
        if median.phase_id[t] != median.phase_id[t + 1] {
            bounds.last_mut().unwrap().1 = t + 1;
            bounds.push((t, from));
        }
    }
    let sign_of = |seg: usize| if seg % 2 == 0 { 1.0 } else { -1.0 };

    // Model on segment j: base_j + k·x(t), with base_0 = c free. For the
    // continuous anchor base_j = c + k·shift_j, for the median anchor base_j
    // is a known constant for j > 0.
    let mut x = vec![0f64; end + 1];
    let mut known = vec![0f64; end + 1];
    let mut free_c = vec![false; end + 1];
    let mut shift = 0.0;
    for (j, &(hi, lo)) in bounds.iter().enumerate() {
        let sg = sign_of(j);
        if j > 0 {
            // flip between hi and hi + 1
            let a = hi + 1;
            shift += 2.0 * sign_of(j - 1) * s[a];
            for t in lo..=hi {
                match opts.anchor {
                    Anchor::Continuous => {
                        x[t] = sg * s[t] + shift;
                        free_c[t] = true;
                    }
                    Anchor::Median => {
                        x[t] = sg * (s[t] - s[hi]);
                        known[t] = m[hi];
                    }
                }
            }
        } else {
            for t in lo..=hi {
                x[t] = s[t];
                free_c[t] = true;
            }
        }
    }

    // minimise Σ (y - [free]c - k x)², y = M - known
    let (mut n0, mut sx0, mut sy0, mut sxy, mut sxx) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for t in from..=end {
        let y = m[t] - known[t];
        if free_c[t] {
            n0 += 1.0;
            sx0 += x[t];
            sy0 += y;
        }
        sxy += x[t] * y;
        sxx += x[t] * x[t];
    }
    let denom = sxx - sx0 * sx0 / n0;
    if denom <= f64::EPSILON * sxx.max(1.0) {
        return Err(Error::NoSignal);
    }
    let slope = (sxy - sx0 * sy0 / n0) / denom;
    let c = (sy0 - slope * sx0) / n0;
    let model: Vec<f64> = (from..=end)
        .map(|t| known[t] + if free_c[t] { c } else { 0.0 } + slope * x[t])
        .collect();
    let flip = if slope < 0.0 { -1.0 } else { 1.0 };
    let k = slope * flip;

    let segments: Vec<Segment> = bounds
        .iter()
        .enumerate()
        .map(|(j, &(hi, lo))| {
            let sg = sign_of(j) * flip;
            Segment {
                start: lo as u64,
                end: hi as u64,
                sign: sg as i8,
                offset: model[hi - from] - k * sg * s[hi],
            }
        })
        .collect();

    let fitted = &m[from..=end];
    let n = fitted.len() as f64;
    let sse: f64 = fitted
        .iter()
        .zip(&model)
        .map(|(a, b)| (a - b).powi(2))
        .sum();
    let rmse = (sse / n).sqrt();
    let mean = fitted.iter().sum::<f64>() / n;
    let spread = (fitted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let residual = if spread > 0.0 { rmse / spread } else { rmse };

    let lo = ((t_half as f64 * opts.corr_from_fraction).floor() as usize).max(from);
    let correlation = pearson(&m[lo..=end], &model[lo - from..]);

    let mut segment_k = Vec::with_capacity(segments.len());
    let mut sse_free = 0.0;
    for seg in &segments {
        let (a, b) = (seg.start as usize, seg.end as usize);
        let xs: Vec<f64> = (a..=b).map(|t| seg.sign as f64 * s[t]).collect();
        match least_squares(&xs, &m[a..=b]) {
            Some(l) if b - a >= 2 => {
                segment_k.push(Some(l.slope));
                sse_free += l.sse;
            }
            _ => {
                // too short to fit alone: charge it the joint error
                segment_k.push(None);
                sse_free += (a..=b)
                    .map(|t| (m[t] - model[t - from]).powi(2))
                    .sum::<f64>();
            }
        }
    }
    let rmse_free = (sse_free / n).sqrt();
    let scale = 1.0 + fitted.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let k_constancy = if rmse <= 1e-12 * scale {
        1.0
    } else if rmse_free > 0.0 {
        rmse / rmse_free
    } else {
        f64::INFINITY
    };

    Ok(SymmetryFit {
        k,
        m0: segments[0].offset,
        segments,
        residual,
        correlation,
        segment_k,
        k_constancy,
    })
}
