//! Cell alphabet, lattices, masks and seeded initial conditions.

mod grid;
mod mask;
mod state;
pub mod symmetry;

pub use grid::{Boundary, Grid};
pub use mask::{
    mask_parity_balance, parse_mask, validate_mask_symmetry, Mask, ParityBalance, SymmetryViolation,
};
pub use state::CellState;

use crate::error::{Error, Result};
use crate::harness::prng::SplitMix64;

/// Swaps `B` and `C` everywhere.
pub fn transliterate(grid: &Grid) -> Grid {
    grid.transliterate()
}

/// `(N_A, N_B, N_C)`.
pub fn count_states(grid: &Grid) -> (usize, usize, usize) {
    grid.count_states()
}

/// An all-`A` lattice with `n_points` distinct `B` cells.
///
/// Each coordinate is drawn as `next() % extent`, axis by axis, from a
/// SplitMix64 stream seeded with `seed`; a draw that hits an already chosen
/// cell is discarded and redrawn.
pub fn random_initial(
    dims: &[usize],
    boundary: &[Boundary],
    n_points: usize,
    seed: u64,
) -> Result<Grid> {
    let mut grid = Grid::new(dims, boundary)?;
    if n_points > grid.len() {
        return Err(Error::TooManyPoints {
            requested: n_points,
            cells: grid.len(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    let mut coord = vec![0usize; dims.len()];
    let mut placed = 0;
    while placed < n_points {
        for (c, &e) in coord.iter_mut().zip(dims) {
            *c = (rng.next_u64() % e as u64) as usize;
        }
        let i = grid.linear(&coord);
        if grid.cells()[i] == CellState::A {
            grid.cells_mut()[i] = CellState::B;
            placed += 1;
        }
    }
    Ok(grid)
}
