//! Six-frame filters drawn between two successive frames.
//!
//! * `A_F` counts, per cell, the frames of the window in which it is `A`.
//! * `B_F^i` marks, per boundary between neighboring cells, whether the
//!   boundary separated unequal states at frame `t - i` and stopped doing so
//!   at frame `t + 1 + i` (`+1`, drawn black) or the other way round (`-1`,
//!   drawn white).
//! * `C_F^i` is the exclusive or of the is-`A` indicator at the same two
//!   frames.

mod window;

pub use window::{frame_window, FrameWindow, BEFORE, WINDOW_LEN};

use serde::{Deserialize, Serialize};

use crate::lattice::{Boundary, CellState, Grid};

/// Temporal pattern of a cell with exactly two `A` frames in its window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternClass {
    /// A rotation of `CBCBAA` (period 6).
    Bank,
    /// A rotation of `CBACBA` (period 3).
    River,
    Other,
}

const BANK: [CellState; 6] = {
    use CellState::*;
    [C, B, C, B, A, A]
};
const RIVER: [CellState; 6] = {
    use CellState::*;
    [C, B, A, C, B, A]
};

fn is_rotation(word: &[CellState; 6], of: &[CellState; 6]) -> bool {
    (0..6).any(|r| (0..6).all(|k| word[k] == of[(k + r) % 6]))
}

/// Classifies six consecutive states by cyclic rotation only.
pub fn classify_cell_pattern(states: &[CellState; 6]) -> PatternClass {
    if is_rotation(states, &BANK) {
        PatternClass::Bank
    } else if is_rotation(states, &RIVER) {
        PatternClass::River
    } else {
        PatternClass::Other
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AFilterField {
    pub dims: Vec<usize>,
    pub boundary: Vec<Boundary>,
    /// Per cell, in row-major order, 0..=6.
    pub values: Vec<u8>,
    pub pattern_class: Vec<PatternClass>,
}

impl AFilterField {
    pub fn is_river(&self, cell: usize) -> bool {
        self.pattern_class[cell] == PatternClass::River
    }

    pub fn sum_minus_two(&self) -> i64 {
        self.values.iter().map(|&v| i64::from(v) - 2).sum()
    }
}

pub fn a_filter(window: &FrameWindow) -> AFilterField {
    let frames = window.frames();
    let n = window.shape().len();
    let mut values = Vec::with_capacity(n);
    let mut pattern_class = Vec::with_capacity(n);
    for cell in 0..n {
        let word: [CellState; 6] = std::array::from_fn(|k| frames[k].cells()[cell]);
        let count = word.iter().filter(|s| s.is_a()).count() as u8;
        values.push(count);
        pattern_class.push(if count == 2 {
            classify_cell_pattern(&word)
        } else {
            PatternClass::Other
        });
    }
    AFilterField {
        dims: window.shape().dims().to_vec(),
        boundary: window.shape().boundary().to_vec(),
        values,
        pattern_class,
    }
}

/// `B_F^i` along one axis. Entry `v` belongs to the boundary between cell
/// `v` and its successor along `axis`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BFilterField {
    pub i: usize,
    pub axis: usize,
    pub dims: Vec<usize>,
    pub values: Vec<i8>,
    /// False for the rim of an open axis, which has no successor.
    pub present: Vec<bool>,
}

impl BFilterField {
    pub fn negated(&self) -> BFilterField {
        BFilterField {
            values: self.values.iter().map(|v| -v).collect(),
            ..self.clone()
        }
    }
}

/// Successor of each cell along `axis`, `None` at the rim of an open axis.
pub fn successors(grid: &Grid, axis: usize) -> Vec<Option<usize>> {
    let dims = grid.dims();
    let stride: usize = dims[axis + 1..].iter().product();
    let extent = dims[axis];
    let periodic = grid.boundary()[axis] == Boundary::Periodic;
    (0..grid.len())
        .map(|v| {
            let x = (v / stride) % extent;
            if x + 1 < extent {
                Some(v + stride)
            } else if periodic {
                Some(v + stride - extent * stride)
            } else {
                None
            }
        })
        .collect()
}

/// `1` where the boundary separates unequal states.
fn unequal(grid: &Grid, next: &[Option<usize>]) -> Vec<i8> {
    let cells = grid.cells();
    next.iter()
        .enumerate()
        .map(|(v, n)| n.map_or(0, |n| i8::from(cells[v] != cells[n])))
        .collect()
}

pub fn b_filter(window: &FrameWindow, i: usize, axis: usize) -> BFilterField {
    let (early, late) = window.pair(i);
    let next = successors(early, axis);
    let before = unequal(early, &next);
    let after = unequal(late, &next);
    BFilterField {
        i,
        axis,
        dims: early.dims().to_vec(),
        values: before.iter().zip(&after).map(|(b, a)| b - a).collect(),
        present: next.iter().map(Option::is_some).collect(),
    }
}

/// `B_F^i` for every axis.
pub fn b_filter_all(window: &FrameWindow, i: usize) -> Vec<BFilterField> {
    (0..window.shape().ndim())
        .map(|axis| b_filter(window, i, axis))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFilterField {
    pub i: usize,
    pub dims: Vec<usize>,
    pub values: Vec<u8>,
}

pub fn c_filter(window: &FrameWindow, i: usize) -> CFilterField {
    let (early, late) = window.pair(i);
    CFilterField {
        i,
        dims: early.dims().to_vec(),
        values: early
            .cells()
            .iter()
            .zip(late.cells())
            .map(|(a, b)| u8::from(a.is_a() != b.is_a()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Cursor;
    use crate::lattice::{random_initial, Mask};
    use CellState::*;

    fn window_from_words(words: &[[CellState; 6]]) -> FrameWindow {
        let frames = (0..6)
            .map(|k| {
                Grid::from_cells(
                    &[1, words.len()],
                    &[Boundary::Periodic; 2],
                    words.iter().map(|w| w[k]).collect(),
                )
                .unwrap()
            })
            .collect();
        FrameWindow::new(0, frames).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_cell_pattern(&[C, B, C, B, A, A]),
            PatternClass::Bank
        );
        assert_eq!(
            classify_cell_pattern(&[A, A, C, B, C, B]),
            PatternClass::Bank
        );
        assert_eq!(
            classify_cell_pattern(&[C, B, A, C, B, A]),
            PatternClass::River
        );
        assert_eq!(
            classify_cell_pattern(&[B, A, C, B, A, C]),
            PatternClass::River
        );
        assert_eq!(
            classify_cell_pattern(&[A, B, A, B, C, C]),
            PatternClass::Other
        );
    }

    #[test]
    fn other_is_not_a_rotation_of_either_word() {
        // enumerate all rotations of both canonical words and confirm non-membership
        let probe = [A, B, A, B, C, C];
        for word in [BANK, RIVER] {
            for r in 0..6 {
                let rotated: Vec<CellState> = (0..6).map(|k| word[(k + r) % 6]).collect();
                assert_ne!(rotated.as_slice(), probe.as_slice());
            }
        }
        // and every two-A word with neither shape is Other
        let mut counts = [0usize; 3];
        for code in 0..729u32 {
            let mut c = code;
            let w: [CellState; 6] = std::array::from_fn(|_| {
                let s = CellState::ALL[(c % 3) as usize];
                c /= 3;
                s
            });
            if w.iter().filter(|s| s.is_a()).count() != 2 {
                continue;
            }
            counts[classify_cell_pattern(&w) as usize] += 1;
        }
        assert_eq!(counts, [6, 3, 15 * 16 - 9]);
    }

    #[test]
    fn a_filter_values() {
        let w = window_from_words(&[[C, B, C, B, A, A], [B, A, C, B, A, C], [A; 6]]);
        let af = a_filter(&w);
        assert_eq!(af.values, vec![2, 2, 6]);
        assert_eq!(
            af.pattern_class,
            vec![PatternClass::Bank, PatternClass::River, PatternClass::Other]
        );
    }

    #[test]
    fn b_filter_sign_convention() {
        // boundary between cell 0 and cell 1 along the row axis
        let w = window_from_words(&[[A, A, A, A, A, A], [A, A, A, C, A, A]]);
        let b0 = b_filter(&w, 0, 1);
        // A|A at frame t (index 2), A|C at t+1 (index 3): 0 became 1
        assert_eq!(b0.values[0], -1);
        let w = window_from_words(&[[A; 6], [A; 6]]);
        assert!(b_filter(&w, 0, 1).values.iter().all(|&v| v == 0));
    }

    #[test]
    fn open_axes_drop_rim_boundaries() {
        let g = Grid::new(&[2, 3], &[Boundary::Open, Boundary::Periodic]).unwrap();
        let next = successors(&g, 0);
        assert_eq!(next, vec![Some(3), Some(4), Some(5), None, None, None]);
        let next = successors(&g, 1);
        assert_eq!(
            next,
            vec![Some(1), Some(2), Some(0), Some(4), Some(5), Some(3)]
        );
    }

    #[test]
    fn c_filter_examples() {
        let w = window_from_words(&[[A; 6], [A, A, A, B, A, A]]);
        assert_eq!(c_filter(&w, 0).values, vec![0, 1]);
        assert_eq!(c_filter(&w, 1).values, vec![0, 0]);
    }

    #[test]
    fn window_positions_and_reflection_at_start() {
        let g = random_initial(&[10, 10], &[Boundary::Periodic; 2], 5, 2).unwrap();
        let m = Mask::full_cube(2, 1, false);
        let mut cur = Cursor::new(&g, &m).unwrap();
        let w0 = frame_window(&mut cur, 0);
        assert_eq!(w0.at(0), Some(&g));
        assert_eq!(w0.frames()[0], w0.frames()[5].transliterate());
        assert_eq!(w0.frames()[1], w0.frames()[4].transliterate());
        assert!(w0.is_consecutive(&m).unwrap());
        let w5 = frame_window(&mut cur, 5);
        let mut fresh = Cursor::new(&g, &m).unwrap();
        assert_eq!(w5.frames()[0], fresh.seek(3).to_grid());
        assert_eq!(w5.at(8), Some(&fresh.seek(8).to_grid()));
        assert_eq!(w5.at(9), None);
        // A_F at t = 0 is even everywhere
        assert!(a_filter(&w0).values.iter().all(|v| v % 2 == 0));
    }
}
