#![allow(dead_code)]

use dcs::harness::SplitMix64;
use dcs::lattice::symmetry::cube_group;
use dcs::lattice::{Boundary, CellState, Grid, Mask};

/// Closes a few random offsets under the cube group. Never empty.
pub fn random_mask(rng: &mut SplitMix64, d: usize, rank: usize) -> Mask {
    let group = cube_group(d);
    let r = rank as i64;
    let mut offsets = Vec::new();
    let orbits = 1 + rng.next_u64() % 3;
    for _ in 0..orbits {
        let seed: Vec<i64> = (0..d)
            .map(|_| (rng.next_u64() % (2 * rank as u64 + 1)) as i64 - r)
            .collect();
        let seed = if seed.iter().all(|&x| x == 0) {
            vec![1; d]
        } else {
            seed
        };
        for g in &group {
            offsets.push(g.apply(&seed));
        }
    }
    Mask::from_offsets(d, offsets).unwrap()
}

pub fn random_grid(rng: &mut SplitMix64, dims: &[usize], boundary: &[Boundary]) -> Grid {
    let n: usize = dims.iter().product();
    let cells = (0..n)
        .map(|_| CellState::ALL[(rng.next_u64() % 3) as usize])
        .collect();
    Grid::from_cells(dims, boundary, cells).unwrap()
}

pub fn random_boundary(rng: &mut SplitMix64, d: usize) -> Vec<Boundary> {
    (0..d)
        .map(|_| {
            if rng.next_u64() % 4 == 0 {
                Boundary::Open
            } else {
                Boundary::Periodic
            }
        })
        .collect()
}
