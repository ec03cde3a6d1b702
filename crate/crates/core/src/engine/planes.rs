use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattice::{Boundary, CellState, Grid};

/// Shape of a bit-packed lattice. Cells along the last axis form a row of
/// `words_per_row` 64-bit words; rows are ordered like the prefixes of a
/// row-major coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub(crate) dims: Vec<usize>,
    pub(crate) boundary: Vec<Boundary>,
    pub(crate) row_len: usize,
    pub(crate) words_per_row: usize,
    pub(crate) n_rows: usize,
    pub(crate) tail_mask: u64,
}

impl Layout {
    pub fn new(dims: &[usize], boundary: &[Boundary]) -> Result<Self> {
        // reuse the grid's validation of extents and flags
        Grid::new(dims, boundary)?;
        let d = dims.len();
        let row_len = dims[d - 1];
        let words_per_row = row_len.div_ceil(64);
        let n_rows = dims[..d - 1].iter().product();
        let tail_bits = row_len - (words_per_row - 1) * 64;
        let tail_mask = if tail_bits == 64 {
            u64::MAX
        } else {
            (1u64 << tail_bits) - 1
        };
        Ok(Layout {
            dims: dims.to_vec(),
            boundary: boundary.to_vec(),
            row_len,
            words_per_row,
            n_rows,
            tail_mask,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self) -> &[Boundary] {
        &self.boundary
    }

    pub fn cell_count(&self) -> usize {
        self.n_rows * self.row_len
    }

    pub(crate) fn words(&self) -> usize {
        self.n_rows * self.words_per_row
    }

    #[inline]
    pub(crate) fn word_mask(&self, word_in_row: usize) -> u64 {
        if word_in_row + 1 == self.words_per_row {
            self.tail_mask
        } else {
            u64::MAX
        }
    }

    #[inline]
    pub(crate) fn bit_of(&self, cell: usize) -> (usize, u64) {
        let row = cell / self.row_len;
        let x = cell % self.row_len;
        (row * self.words_per_row + x / 64, 1u64 << (x % 64))
    }
}

/// A lattice state as two bit-planes: one bit per cell for `B`, one for `C`.
/// A cell with neither bit set is `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planes {
    pub(crate) layout: Arc<Layout>,
    pub(crate) b: Vec<u64>,
    pub(crate) c: Vec<u64>,
}

impl Planes {
    pub fn from_grid(grid: &Grid) -> Planes {
        let layout =
            Arc::new(Layout::new(grid.dims(), grid.boundary()).expect("grid shape is valid"));
        Planes::from_grid_with(layout, grid)
    }

    pub(crate) fn from_grid_with(layout: Arc<Layout>, grid: &Grid) -> Planes {
        let words = layout.words();
        let mut b = vec![0u64; words];
        let mut c = vec![0u64; words];
        for (i, &s) in grid.cells().iter().enumerate() {
            let (w, bit) = layout.bit_of(i);
            match s {
                CellState::A => {}
                CellState::B => b[w] |= bit,
                CellState::C => c[w] |= bit,
            }
        }
        Planes { layout, b, c }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn to_grid(&self) -> Grid {
        let cells = (0..self.layout.cell_count())
            .map(|i| self.cell(i))
            .collect();
        Grid::from_cells(&self.layout.dims, &self.layout.boundary, cells).expect("layout matches")
    }

    #[inline]
    pub fn cell(&self, index: usize) -> CellState {
        let (w, bit) = self.layout.bit_of(index);
        if self.b[w] & bit != 0 {
            CellState::B
        } else if self.c[w] & bit != 0 {
            CellState::C
        } else {
            CellState::A
        }
    }

    pub fn count_c(&self) -> u64 {
        self.c.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn count_b(&self) -> u64 {
        self.b.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// `(N_A, N_B, N_C)`.
    pub fn count_states(&self) -> (u64, u64, u64) {
        let nb = self.count_b();
        let nc = self.count_c();
        (self.layout.cell_count() as u64 - nb - nc, nb, nc)
    }

    /// Swaps the two planes.
    pub fn transliterate(&self) -> Planes {
        Planes {
            layout: self.layout.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
        }
    }

    /// Per-cell indicator of state `A`, in linear cell order.
    pub fn a_indicator(&self) -> Vec<bool> {
        (0..self.layout.cell_count())
            .map(|i| {
                let (w, bit) = self.layout.bit_of(i);
                (self.b[w] | self.c[w]) & bit == 0
            })
            .collect()
    }

    /// Adds 1 to `counts[i]` for every cell in state `A`.
    pub(crate) fn add_a_counts(&self, counts: &mut [i64], sign: i64) {
        let l = &self.layout;
        for row in 0..l.n_rows {
            for wi in 0..l.words_per_row {
                let w = row * l.words_per_row + wi;
                let mut a = !(self.b[w] | self.c[w]) & l.word_mask(wi);
                let base = row * l.row_len + wi * 64;
                while a != 0 {
                    let bit = a.trailing_zeros() as usize;
                    counts[base + bit] += sign;
                    a &= a - 1;
                }
            }
        }
    }

    /// SHA-256 over the cell characters in linear order, hex-encoded.
    pub fn checksum(&self) -> String {
        let mut hasher = Sha256::new();
        let bytes: Vec<u8> = (0..self.layout.cell_count())
            .map(|i| self.cell(i).to_char() as u8)
            .collect();
        hasher.update(&bytes);
        hasher
            .finalize()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub(crate) fn check_layout(&self, other: &Layout) -> Result<()> {
        if *self.layout != *other {
            return Err(Error::InvalidGrid(format!(
                "lattice {:?} does not match engine lattice {:?}",
                self.layout.dims, other.dims
            )));
        }
        Ok(())
    }
}

/// `dst |= src` shifted so that bit `x` of the result is bit `x + k` of `src`.
#[inline]
pub(crate) fn or_shr(src: &[u64], k: usize, dst: &mut [u64]) {
    let n = src.len();
    let (q, b) = (k / 64, k % 64);
    if q >= n {
        return;
    }
    for i in 0..n - q {
        let mut v = src[i + q] >> b;
        if b != 0 && i + q + 1 < n {
            v |= src[i + q + 1] << (64 - b);
        }
        dst[i] |= v;
    }
}

/// `dst |= src` shifted so that bit `x` of the result is bit `x - k` of `src`.
#[inline]
pub(crate) fn or_shl(src: &[u64], k: usize, dst: &mut [u64]) {
    let n = src.len();
    let (q, b) = (k / 64, k % 64);
    if q >= n {
        return;
    }
    for i in q..n {
        let mut v = src[i - q] << b;
        if b != 0 && i > q {
            v |= src[i - q - 1] >> (64 - b);
        }
        dst[i] |= v;
    }
}

/// `dst |= row` displaced along the row so that bit `x` of the result is
/// bit `x + dx` of `src`, wrapping on a periodic axis and reading zeros
/// past the ends of an open one. Bits past `width` are cleared.
pub(crate) fn or_displaced(
    src: &[u64],
    width: usize,
    dx: i64,
    periodic: bool,
    tail_mask: u64,
    dst: &mut [u64],
) {
    let n = src.len();
    if periodic {
        let k = dx.rem_euclid(width as i64) as usize;
        if k == 0 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d |= s;
            }
        } else {
            or_shr(src, k, dst);
            or_shl(src, width - k, dst);
        }
    } else if dx >= 0 {
        or_shr(src, dx as usize, dst);
    } else {
        or_shl(src, dx.unsigned_abs() as usize, dst);
    }
    dst[n - 1] &= tail_mask;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(row: &[u64], width: usize) -> Vec<bool> {
        (0..width)
            .map(|x| row[x / 64] >> (x % 64) & 1 == 1)
            .collect()
    }

    fn pack(v: &[bool]) -> Vec<u64> {
        let mut out = vec![0u64; v.len().div_ceil(64)];
        for (x, &b) in v.iter().enumerate() {
            if b {
                out[x / 64] |= 1 << (x % 64);
            }
        }
        out
    }

    #[test]
    fn displacement_matches_bitwise_reference() {
        let mut rng = crate::harness::prng::SplitMix64::new(5);
        for width in [1usize, 2, 3, 63, 64, 65, 70, 128, 130] {
            let src: Vec<bool> = (0..width).map(|_| rng.next_u64() & 1 == 1).collect();
            let packed = pack(&src);
            let words = packed.len();
            let tail_bits = width - (words - 1) * 64;
            let tail = if tail_bits == 64 {
                u64::MAX
            } else {
                (1 << tail_bits) - 1
            };
            for dx in -9i64..=9 {
                for periodic in [true, false] {
                    let mut dst = vec![0u64; words];
                    or_displaced(&packed, width, dx, periodic, tail, &mut dst);
                    let expected: Vec<bool> = (0..width as i64)
                        .map(|x| {
                            let s = x + dx;
                            if periodic {
                                src[s.rem_euclid(width as i64) as usize]
                            } else {
                                (0..width as i64).contains(&s) && src[s as usize]
                            }
                        })
                        .collect();
                    assert_eq!(
                        bits(&dst, width),
                        expected,
                        "width {width} dx {dx} periodic {periodic}"
                    );
                    if words * 64 > width {
                        assert_eq!(dst[words - 1] & !tail, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn grid_round_trip() {
        let mut g = Grid::torus(&[3, 70]).unwrap();
        g.set(&[0, 69], CellState::B);
        g.set(&[2, 64], CellState::C);
        g.set(&[1, 0], CellState::C);
        let p = Planes::from_grid(&g);
        assert_eq!(p.to_grid(), g);
        assert_eq!(p.count_states(), (207, 1, 2));
        assert_eq!(p.transliterate().to_grid(), g.transliterate());
    }
}
