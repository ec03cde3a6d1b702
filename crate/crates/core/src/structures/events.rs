use serde::{Deserialize, Serialize};

pub const DEFAULT_THRESHOLD: u64 = 5;
pub const DEFAULT_WINDOW: usize = 50;

/// A moment where `N_C` dips near zero and the motion locally runs back.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalReversalEvent {
    pub t: u64,
    /// `t mod 3`.
    pub phase: u8,
    pub nc_value: u64,
}

/// Times `t ≥ 1` with `nc[t] ≤ threshold` that are the minimum of
/// `nc[t - window ..= t + window]` (clipped to the series). Qualifying times
/// closer than `window` to the previous one join its cluster; each cluster
/// reports its smallest value, earliest first among ties.
pub fn detect_local_reversals(
    nc_series: &[u64],
    threshold: u64,
    window: usize,
) -> Vec<LocalReversalEvent> {
    let n = nc_series.len();
    let mut events: Vec<LocalReversalEvent> = Vec::new();
    let mut last_qualifying: Option<usize> = None;
    for t in 1..n {
        let v = nc_series[t];
        if v > threshold {
            continue;
        }
        let lo = t.saturating_sub(window);
        let hi = (t + window).min(n - 1);
        if nc_series[lo..=hi].iter().any(|&u| u < v) {
            continue;
        }
        let event = LocalReversalEvent {
            t: t as u64,
            phase: (t % 3) as u8,
            nc_value: v,
        };
        match (last_qualifying, events.last_mut()) {
            (Some(prev), Some(last)) if t - prev <= window => {
                if v < last.nc_value {
                    *last = event;
                }
            }
            _ => events.push(event),
        }
        last_qualifying = Some(t);
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_series() {
        let down: Vec<u64> = (0..100).rev().collect();
        let ev = detect_local_reversals(&down, 5, 10);
        assert_eq!(
            ev,
            vec![LocalReversalEvent {
                t: 99,
                phase: 0,
                nc_value: 0
            }]
        );
        let up: Vec<u64> = (10..110).collect();
        assert!(detect_local_reversals(&up, 5, 10).is_empty());
    }

    #[test]
    fn single_dip() {
        let mut s: Vec<u64> = (0..10_000).map(|t| 100 + (t % 7)).collect();
        s[5000] = 1;
        let ev = detect_local_reversals(&s, 5, 50);
        assert_eq!(ev.len(), 1);
        assert_eq!((ev[0].t, ev[0].nc_value), (5000, 1));
        assert_eq!(ev[0].phase, (5000 % 3) as u8);
    }

    #[test]
    fn nearby_dips_collapse_to_the_minimum() {
        let mut s = vec![200u64; 400];
        s[100] = 3;
        s[103] = 2;
        s[106] = 3;
        s[300] = 4;
        *s.last_mut().unwrap() = 0;
        let ev = detect_local_reversals(&s, 5, 50);
        let got: Vec<(u64, u64)> = ev.iter().map(|e| (e.t, e.nc_value)).collect();
        assert_eq!(got, vec![(103, 2), (300, 4), (399, 0)]);
    }

    #[test]
    fn translation_shifts_events() {
        let mut s = vec![50u64; 300];
        s[40] = 1;
        s[200] = 2;
        let base = detect_local_reversals(&s, 5, 20);
        let mut shifted = vec![50u64; 17];
        shifted.extend(&s);
        let moved = detect_local_reversals(&shifted, 5, 20);
        assert_eq!(base.len(), moved.len());
        for (a, b) in base.iter().zip(&moved) {
            assert_eq!(a.t + 17, b.t);
            assert_eq!(a.nc_value, b.nc_value);
        }
    }

    #[test]
    fn start_is_not_an_event() {
        assert!(detect_local_reversals(&[0, 8, 9, 10], 5, 2).is_empty());
    }
}
