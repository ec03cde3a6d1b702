//! Exact forward and backward evolution.
//!
//! The rule: a cell whose mask sees at least one `C` applies law (II)
//! (`A→C, B→A, C→B`), every other cell applies law (I) (`A→A, B→C, C→B`).
//! Swapping `B` and `C` before and after a forward step runs time backwards.

pub mod naive;
mod planes;
mod run;
mod screen;
mod stepper;

pub use planes::{Layout, Planes};
pub use run::{run_to_mirror, run_to_mirror_with, Cursor, Run, RunOutcome, DEFAULT_MAX_STEPS};
pub use screen::{detect_superriver_early, SuperRiverScreen, DEFAULT_SCREEN_HORIZON};
pub use stepper::Engine;

use crate::error::Result;
use crate::lattice::{Grid, Mask};

/// Entry `v` is true iff some offset `o` of `mask` has `grid[v + o] = C`.
pub fn c_presence_map(grid: &Grid, mask: &Mask) -> Result<Vec<bool>> {
    let mut engine = Engine::for_grid(mask, grid)?;
    let planes = engine.load(grid)?;
    let bits = engine.presence_bits(&planes)?;
    let layout = engine.layout();
    Ok((0..grid.len())
        .map(|i| {
            let (w, bit) = layout.bit_of(i);
            bits[w] & bit != 0
        })
        .collect())
}

pub fn step_forward(grid: &Grid, mask: &Mask) -> Result<Grid> {
    let mut engine = Engine::for_grid(mask, grid)?;
    let mut planes = engine.load(grid)?;
    engine.step_in_place(&mut planes);
    Ok(planes.to_grid())
}

/// `transliterate(step_forward(transliterate(grid)))`.
pub fn step_backward(grid: &Grid, mask: &Mask) -> Result<Grid> {
    let mut engine = Engine::for_grid(mask, grid)?;
    let mut planes = engine.load(grid)?;
    engine.step_back_in_place(&mut planes);
    Ok(planes.to_grid())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{random_initial, Boundary, CellState};

    fn single(dims: &[usize], at: &[usize], s: CellState) -> Grid {
        let mut g = Grid::torus(dims).unwrap();
        g.set(at, s);
        g
    }

    #[test]
    fn presence_of_single_c() {
        let g = single(&[5, 5], &[2, 2], CellState::C);
        let p = c_presence_map(&g, &Mask::von_neumann(2)).unwrap();
        let hits: Vec<Vec<usize>> = (0..25).filter(|&i| p[i]).map(|i| g.coord(i)).collect();
        assert_eq!(hits, vec![vec![1, 2], vec![2, 1], vec![2, 3], vec![3, 2]]);
        let none = c_presence_map(&Grid::torus(&[5, 5]).unwrap(), &Mask::von_neumann(2)).unwrap();
        assert!(none.iter().all(|&x| !x));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let g = Grid::torus(&[4, 4]).unwrap();
        assert!(step_forward(&g, &Mask::von_neumann(3)).is_err());
        assert!(c_presence_map(&g, &Mask::von_neumann(1)).is_err());
        assert!(naive::step_forward(&g, &Mask::von_neumann(3)).is_err());
    }

    #[test]
    fn single_b_two_steps() {
        let vn = Mask::von_neumann(2);
        let g0 = single(&[3, 3], &[1, 1], CellState::B);
        let g1 = step_forward(&g0, &vn).unwrap();
        assert_eq!(g1, single(&[3, 3], &[1, 1], CellState::C));
        let g2 = step_forward(&g1, &vn).unwrap();
        let mut expected = single(&[3, 3], &[1, 1], CellState::B);
        for n in [[0, 1], [1, 0], [1, 2], [2, 1]] {
            expected.set(&n, CellState::C);
        }
        assert_eq!(g2, expected);
        assert_eq!(naive::step_forward(&g1, &vn).unwrap(), expected);
    }

    #[test]
    fn no_c_means_transliteration() {
        let g = random_initial(&[9, 11], &[Boundary::Periodic; 2], 20, 3).unwrap();
        let m = Mask::full_cube(2, 2, false);
        assert_eq!(step_forward(&g, &m).unwrap(), g.transliterate());
    }

    #[test]
    fn backward_undoes_forward_on_open_lattice() {
        let mut g = random_initial(&[8, 70], &[Boundary::Open, Boundary::Open], 40, 11).unwrap();
        for i in (0..g.len()).step_by(7) {
            g.cells_mut()[i] = CellState::C;
        }
        let m = Mask::full_cube(2, 3, false);
        let f = step_forward(&g, &m).unwrap();
        assert_eq!(step_backward(&f, &m).unwrap(), g);
        assert_eq!(f, naive::step_forward(&g, &m).unwrap());
    }

    #[test]
    fn all_a_returns_after_one_step() {
        let g = Grid::torus(&[6, 6]).unwrap();
        let out = run_to_mirror(&g, &Mask::von_neumann(2), 10).unwrap();
        assert!(out.returned);
        assert_eq!(out.t_half, Some(1));
        assert_eq!(out.nc_series, vec![0, 0]);
    }

    #[test]
    fn capped_run_reports_no_return() {
        // a lone B on a 1D ring with a rank-1 mask never clears C at step 1
        let g = single(&[7], &[3], CellState::B);
        let out = run_to_mirror(&g, &Mask::von_neumann(1), 1).unwrap();
        assert!(!out.returned);
        assert_eq!(out.t_half, None);
        assert_eq!(out.nc_series, vec![0, 1]);
    }

    #[test]
    fn cursor_moves_both_ways() {
        let g = random_initial(&[12, 12], &[Boundary::Periodic; 2], 6, 1).unwrap();
        let m = Mask::full_cube(2, 1, false);
        let mut cur = Cursor::new(&g, &m).unwrap();
        cur.seek(-4);
        let back = cur.grid();
        cur.seek(5);
        cur.seek(0);
        assert_eq!(cur.grid(), g);
        cur.seek(-4);
        assert_eq!(cur.grid(), back);
        // s_{-k} = T(s_{k+1}) for a start without C
        let frames = cur.frames(-3, 8);
        for k in 1..=3usize {
            assert_eq!(
                frames[3 - k].to_grid(),
                frames[k + 4].to_grid().transliterate()
            );
        }
    }
}
