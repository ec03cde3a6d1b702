use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filters::successors;
use crate::lattice::{CellState, Grid, Mask};

/// Frames in a NullRiver window: `t-5 ..= t+6`.
pub const NULLRIVER_FRAMES: usize = 12;
/// Frames before the gap between `t` and `t + 1`.
pub const NULLRIVER_BEFORE: usize = 5;

/// Outline of the center cell and of the mask footprint at one phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseOutline {
    /// `B_F^0` on the center cell's faces, ordered `[axis0-, axis0+, axis1-, …]`,
    /// across the gap between this frame and the next (cyclically).
    pub center: Vec<i8>,
    /// White (`-1`) boundaries inside the footprint (center and mask cells).
    pub footprint_white: usize,
    /// Black (`+1`) boundaries inside the footprint.
    pub footprint_black: usize,
}

impl PhaseOutline {
    pub fn is_white_only(&self) -> bool {
        self.center.contains(&-1) && self.center.iter().all(|&v| v <= 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullRiverSighting {
    pub cell: Vec<usize>,
    /// Time of the window's first frame modulo 12.
    pub phase_offset: u8,
    /// The cell's state word over the window.
    pub word: Vec<CellState>,
    pub signature: Vec<PhaseOutline>,
}

/// Minimal cyclic period of a 12-frame word, one of 1, 2, 3, 4, 6, 12.
pub fn cyclic_period(word: &[CellState]) -> usize {
    let n = word.len();
    (1..=n)
        .filter(|p| n % p == 0)
        .find(|&p| (0..n).all(|k| word[k] == word[(k + p) % n]))
        .unwrap_or(n)
}

/// Cells of period 12 whose whole Chebyshev neighborhood of radius `radius`
/// has period dividing 6. `frames` are the 12 consecutive frames `t-5 ..= t+6`.
pub fn detect_nullrivers(
    frames: &[Grid],
    t: i64,
    mask: &Mask,
    radius: usize,
) -> Result<Vec<NullRiverSighting>> {
    if frames.len() != NULLRIVER_FRAMES {
        return Err(Error::InvalidGrid(format!(
            "NullRiver detection needs {NULLRIVER_FRAMES} frames, got {}",
            frames.len()
        )));
    }
    let shape = &frames[0];
    let n = shape.len();
    let d = shape.ndim();
    let words: Vec<Vec<CellState>> = (0..n)
        .map(|v| frames.iter().map(|f| f.cells()[v]).collect())
        .collect();
    let six_periodic: Vec<bool> = words.iter().map(|w| 6 % cyclic_period(w) == 0).collect();
    let ball: Vec<Vec<i64>> = if radius == 0 {
        Vec::new()
    } else {
        Mask::full_cube(d, radius, false).offsets().to_vec()
    };

    let next: Vec<Vec<Option<usize>>> = (0..d).map(|axis| successors(shape, axis)).collect();
    let prev: Vec<Vec<Option<usize>>> = next
        .iter()
        .map(|nx| {
            let mut p = vec![None; n];
            for (v, w) in nx.iter().enumerate() {
                if let Some(w) = *w {
                    p[w] = Some(v);
                }
            }
            p
        })
        .collect();

    let mut out = Vec::new();
    let mut probe = vec![0i64; d];
    for v in 0..n {
        if cyclic_period(&words[v]) != NULLRIVER_FRAMES {
            continue;
        }
        let coord = shape.coord(v);
        let quiet = ball.iter().all(|o| {
            for k in 0..d {
                probe[k] = coord[k] as i64 + o[k];
            }
            shape.resolve(&probe).map_or(true, |u| six_periodic[u])
        });
        if !quiet {
            continue;
        }
        let footprint: Vec<usize> = std::iter::once(v)
            .chain(mask.offsets().iter().filter_map(|o| {
                for k in 0..d {
                    probe[k] = coord[k] as i64 + o[k];
                }
                shape.resolve(&probe)
            }))
            .collect();
        let signature = (0..NULLRIVER_FRAMES)
            .map(|k| {
                let (a, b) = (&frames[k], &frames[(k + 1) % NULLRIVER_FRAMES]);
                let change = |x: usize, y: Option<usize>| -> i8 {
                    y.map_or(0, |y| {
                        let before = i8::from(a.cells()[x] != a.cells()[y]);
                        let after = i8::from(b.cells()[x] != b.cells()[y]);
                        before - after
                    })
                };
                let mut center = Vec::with_capacity(2 * d);
                for axis in 0..d {
                    center.push(prev[axis][v].map_or(0, |p| change(p, Some(v))));
                    center.push(change(v, next[axis][v]));
                }
                let (mut white, mut black) = (0, 0);
                for &u in &footprint {
                    for nx in &next {
                        match change(u, nx[u]) {
                            -1 => white += 1,
                            1 => black += 1,
                            _ => {}
                        }
                    }
                }
                PhaseOutline {
                    center,
                    footprint_white: white,
                    footprint_black: black,
                }
            })
            .collect();
        out.push(NullRiverSighting {
            cell: coord,
            phase_offset: (t - NULLRIVER_BEFORE as i64).rem_euclid(12) as u8,
            word: words[v].clone(),
            signature,
        });
    }
    Ok(out)
}

/// Aggregate regularities of a set of NullRiver signatures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureStats {
    pub sightings: usize,
    /// Sightings with an alignment where frames 2 and 9 are white-only and
    /// frames 12 and 5 are their opposites.
    pub conforming: usize,
    pub frame2_white_only: usize,
    pub frame9_white_only: usize,
    pub opposition_holds: usize,
    /// Frame-2 and frame-9 outlines that are complementary corners.
    pub diagonal_counterexamples: usize,
    /// Per aligned phase (frames 1..=12): `[white, black, blank]` face counts
    /// of the center outline.
    pub phase_table: Vec<[usize; 3]>,
}

impl SignatureStats {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("frame,white,black,blank\n");
        for (k, [w, b, z]) in self.phase_table.iter().enumerate() {
            out.push_str(&format!("{},{w},{b},{z}\n", k + 1));
        }
        out
    }
}

fn opposite(a: &[i8], b: &[i8]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == -*y)
}

/// Complementary corners: each outline has exactly one white face per axis
/// and together they cover every face once.
fn diagonal_pair(a: &[i8], b: &[i8]) -> bool {
    let d = a.len() / 2;
    (0..d).all(|axis| {
        let (am, ap) = (a[2 * axis] == -1, a[2 * axis + 1] == -1);
        let (bm, bp) = (b[2 * axis] == -1, b[2 * axis + 1] == -1);
        am != ap && bm != bp && am == bp
    }) && a.iter().chain(b).all(|&v| v <= 0)
}

/// Center outline of 1-based `frame` under rotation `r`.
fn at(s: &NullRiverSighting, r: usize, frame: usize) -> &[i8] {
    &s.signature[(r + frame - 1) % NULLRIVER_FRAMES].center
}

/// Tabulates outlines by aligned phase. Each sighting is aligned by the
/// first rotation under which frames 2 and 9 are white-only; sightings with
/// no such rotation keep their recorded order.
pub fn nullriver_signature_scan(sightings: &[NullRiverSighting]) -> SignatureStats {
    let mut stats = SignatureStats::default();
    if sightings.is_empty() {
        return stats;
    }
    stats.sightings = sightings.len();
    stats.phase_table = vec![[0; 3]; NULLRIVER_FRAMES];
    for s in sightings {
        let white = |r: usize, f: usize| {
            let c = at(s, r, f);
            c.contains(&-1) && c.iter().all(|&v| v <= 0)
        };
        let aligned = (0..NULLRIVER_FRAMES).find(|&r| white(r, 2) && white(r, 9));
        let r = aligned.unwrap_or(0);
        if white(r, 2) {
            stats.frame2_white_only += 1;
        }
        if white(r, 9) {
            stats.frame9_white_only += 1;
        }
        let opposition = opposite(at(s, r, 12), at(s, r, 2)) && opposite(at(s, r, 5), at(s, r, 9));
        if opposition {
            stats.opposition_holds += 1;
        }
        if aligned.is_some() && opposition {
            stats.conforming += 1;
        }
        if aligned.is_some() && diagonal_pair(at(s, r, 2), at(s, r, 9)) {
            stats.diagonal_counterexamples += 1;
        }
        for frame in 1..=NULLRIVER_FRAMES {
            for &v in at(s, r, frame) {
                let slot = match v {
                    -1 => 0,
                    1 => 1,
                    _ => 2,
                };
                stats.phase_table[frame - 1][slot] += 1;
            }
        }
    }
    stats
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Boundary;
    use CellState::*;

    fn bank_word(shift: usize) -> Vec<CellState> {
        let base = [C, B, C, B, A, A];
        (0..12).map(|k| base[(k + shift) % 6]).collect()
    }

    /// A `size×size` torus where every cell runs a phase-shifted Bank word
    /// except `special`, which runs `word`.
    fn frames_with(size: usize, special: usize, word: &[CellState]) -> Vec<Grid> {
        (0..12)
            .map(|k| {
                let cells = (0..size * size)
                    .map(|v| {
                        if v == special {
                            word[k]
                        } else {
                            bank_word((v * 5 + v / size) % 6)[k]
                        }
                    })
                    .collect();
                Grid::from_cells(&[size, size], &[Boundary::Periodic; 2], cells).unwrap()
            })
            .collect()
    }

    #[test]
    fn cyclic_periods() {
        assert_eq!(cyclic_period(&bank_word(0)), 6);
        assert_eq!(cyclic_period(&[A; 12]), 1);
        let river: Vec<CellState> = (0..12).map(|k| [C, B, A][k % 3]).collect();
        assert_eq!(cyclic_period(&river), 3);
        let twelve = [C, B, C, B, A, A, C, B, A, B, A, A];
        assert_eq!(cyclic_period(&twelve), 12);
    }

    #[test]
    fn uniform_bank_has_no_sightings() {
        let frames = frames_with(9, usize::MAX, &[]);
        let found = detect_nullrivers(&frames, 0, &Mask::full_cube(2, 1, false), 1).unwrap();
        assert!(found.is_empty());
        assert_eq!(nullriver_signature_scan(&found), SignatureStats::default());
    }

    #[test]
    fn isolated_twelve_periodic_cell_is_found() {
        let word = [C, B, C, B, A, A, C, B, A, B, A, A];
        let frames = frames_with(9, 4 * 9 + 4, &word);
        let found = detect_nullrivers(&frames, 7, &Mask::full_cube(2, 1, false), 2).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].cell, vec![4, 4]);
        assert_eq!(found[0].phase_offset, 2);
        assert_eq!(cyclic_period(&found[0].word), 12);
        assert_eq!(found[0].signature.len(), 12);
        assert!(found[0].signature.iter().all(|p| p.center.len() == 4));
        let stats = nullriver_signature_scan(&found);
        assert_eq!(stats.sightings, 1);
        let faces: usize = stats
            .phase_table
            .iter()
            .map(|r| r.iter().sum::<usize>())
            .sum();
        assert_eq!(faces, 12 * 4);
    }

    #[test]
    fn noisy_neighbor_suppresses_sighting() {
        let word = [C, B, C, B, A, A, C, B, A, B, A, A];
        let mut frames = frames_with(9, 40, &word);
        // make a cell two steps away non-periodic
        frames[3].cells_mut()[42] = A;
        frames[9].cells_mut()[42] = C;
        let m = Mask::full_cube(2, 1, false);
        assert!(detect_nullrivers(&frames, 0, &m, 2).unwrap().is_empty());
        // at radius 1 both perturbed cells stand alone
        let cells: Vec<Vec<usize>> = detect_nullrivers(&frames, 0, &m, 1)
            .unwrap()
            .into_iter()
            .map(|s| s.cell)
            .collect();
        assert_eq!(cells, vec![vec![4, 4], vec![4, 6]]);
    }

    #[test]
    fn diagonal_pairs_are_bucketed() {
        // frame 2: left and bottom white; frame 9: right and top white
        let mut signature = vec![
            PhaseOutline {
                center: vec![0; 4],
                footprint_white: 0,
                footprint_black: 0
            };
            12
        ];
        signature[1].center = vec![-1, 0, -1, 0];
        signature[8].center = vec![0, -1, 0, -1];
        signature[11].center = vec![1, 0, 1, 0];
        signature[4].center = vec![0, 1, 0, 1];
        let s = NullRiverSighting {
            cell: vec![0, 0],
            phase_offset: 0,
            word: vec![A; 12],
            signature,
        };
        let stats = nullriver_signature_scan(&[s]);
        assert_eq!(stats.conforming, 1);
        assert_eq!(stats.diagonal_counterexamples, 1);
        assert_eq!(stats.frame2_white_only, 1);
        assert_eq!(stats.phase_table[1], [2, 0, 2]);
        assert!(stats.to_csv().starts_with("frame,white,black,blank\n1,"));
    }
}
