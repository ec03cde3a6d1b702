//! Cell-by-cell reference implementation of the transition rule.
//!
//! Slow and obvious on purpose: it is the oracle the bit-parallel engine is
//! tested against and shares no code with it beyond [`Grid`] access.

use crate::error::{Error, Result};
use crate::lattice::{CellState, Grid, Mask};

fn check(grid: &Grid, mask: &Mask) -> Result<()> {
    if grid.ndim() != mask.dim() {
        return Err(Error::DimensionMismatch {
            expected: grid.ndim(),
            found: mask.dim(),
        });
    }
    Ok(())
}

pub fn c_presence_map(grid: &Grid, mask: &Mask) -> Result<Vec<bool>> {
    check(grid, mask)?;
    let mut probe = vec![0i64; grid.ndim()];
    Ok((0..grid.len())
        .map(|i| {
            let v = grid.coord(i);
            mask.offsets().iter().any(|o| {
                for (k, p) in probe.iter_mut().enumerate() {
                    *p = v[k] as i64 + o[k];
                }
                grid.get(&probe) == CellState::C
            })
        })
        .collect())
}

pub fn step_forward(grid: &Grid, mask: &Mask) -> Result<Grid> {
    let presence = c_presence_map(grid, mask)?;
    let mut next = grid.clone();
    for (cell, sees_c) in next.cells_mut().iter_mut().zip(presence) {
        *cell = if sees_c {
            cell.law_two()
        } else {
            cell.law_one()
        };
    }
    Ok(next)
}

pub fn step_backward(grid: &Grid, mask: &Mask) -> Result<Grid> {
    Ok(step_forward(&grid.transliterate(), mask)?.transliterate())
}
