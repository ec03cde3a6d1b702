use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::symmetry::{cube_group, CubeSymmetry};
use crate::error::{Error, Result};

/// The neighborhood of a cell: a set of integer offsets closed under the
/// symmetry group of the d-cube.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MaskRepr", into = "MaskRepr")]
pub struct Mask {
    dim: usize,
    offsets: Vec<Vec<i64>>,
    includes_center: bool,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct MaskRepr {
    dim: usize,
    offsets: Vec<Vec<i64>>,
}

impl TryFrom<MaskRepr> for Mask {
    type Error = Error;

    fn try_from(r: MaskRepr) -> Result<Mask> {
        let mask = Mask::from_offsets(r.dim, r.offsets)?;
        validate_mask_symmetry(&mask).map_err(|v| Error::Symmetry(v.to_string()))?;
        Ok(mask)
    }
}

impl From<Mask> for MaskRepr {
    fn from(m: Mask) -> MaskRepr {
        MaskRepr {
            dim: m.dim,
            offsets: m.offsets,
        }
    }
}

/// Counts of mask offsets on the two colors of a d-dimensional chessboard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityBalance {
    pub even_count: usize,
    pub odd_count: usize,
}

impl ParityBalance {
    /// Masks lying entirely on one color never return.
    pub fn warn(&self) -> bool {
        self.even_count == 0 || self.odd_count == 0
    }
}

/// One offset that leaves the mask under one group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryViolation {
    pub offset: Vec<i64>,
    pub image: Vec<i64>,
    pub element: CubeSymmetry,
}

impl fmt::Display for SymmetryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "offset {:?} maps to {:?} under {}, which is not in the mask",
            self.offset, self.image, self.element
        )
    }
}

impl Mask {
    /// Builds a mask from raw offsets without checking symmetry.
    pub fn from_offsets(dim: usize, offsets: impl IntoIterator<Item = Vec<i64>>) -> Result<Mask> {
        if dim == 0 {
            return Err(Error::InvalidGrid("mask dimension must be positive".into()));
        }
        let set: BTreeSet<Vec<i64>> = offsets.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidGrid("mask has no offsets".into()));
        }
        if let Some(bad) = set.iter().find(|o| o.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let rank = set
            .iter()
            .flat_map(|o| o.iter().map(|c| c.unsigned_abs() as usize))
            .max()
            .unwrap_or(0);
        let includes_center = set.iter().any(|o| o.iter().all(|&c| c == 0));
        Ok(Mask {
            dim,
            offsets: set.into_iter().collect(),
            includes_center,
            rank,
        })
    }

    /// Orthogonal neighbors only.
    pub fn von_neumann(dim: usize) -> Mask {
        let mut offsets = Vec::new();
        for axis in 0..dim {
            for s in [-1, 1] {
                let mut o = vec![0; dim];
                o[axis] = s;
                offsets.push(o);
            }
        }
        Mask::from_offsets(dim, offsets).expect("non-empty")
    }

    /// Every offset in the cube of side `2·rank + 1`.
    pub fn full_cube(dim: usize, rank: usize, include_center: bool) -> Mask {
        Mask::cube_filtered(dim, rank, |o| include_center || o.iter().any(|&c| c != 0))
    }

    /// The cube of side `2·rank + 1` with the 2^d corners removed.
    pub fn cube_without_corners(dim: usize, rank: usize, include_center: bool) -> Mask {
        let r = rank as i64;
        Mask::cube_filtered(dim, rank, |o| {
            let corner = o.iter().all(|c| c.abs() == r);
            let center = o.iter().all(|&c| c == 0);
            !corner && (include_center || !center)
        })
    }

    fn cube_filtered(dim: usize, rank: usize, keep: impl Fn(&[i64]) -> bool) -> Mask {
        let r = rank as i64;
        let side = 2 * rank + 1;
        let mut offsets = Vec::new();
        for i in 0..side.pow(dim as u32) {
            let mut rem = i;
            let mut o = vec![0i64; dim];
            for axis in (0..dim).rev() {
                o[axis] = (rem % side) as i64 - r;
                rem /= side;
            }
            if keep(&o) {
                offsets.push(o);
            }
        }
        Mask::from_offsets(dim, offsets).expect("non-empty mask")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offsets(&self) -> &[Vec<i64>] {
        &self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn includes_center(&self) -> bool {
        self.includes_center
    }

    /// Largest absolute coordinate over all offsets.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, offset: &[i64]) -> bool {
        self.offsets
            .binary_search_by(|o| o.as_slice().cmp(offset))
            .is_ok()
    }

    pub fn parity_balance(&self) -> ParityBalance {
        mask_parity_balance(self)
    }

    /// Parses the text mask format:
    ///
    /// ```text
    /// DIM 2
    /// RANK 1
    /// 010
    /// 101
    /// 010
    /// ```
    ///
    /// In three dimensions the block is written as `2r+1` slices of
    /// `2r+1` lines each, separated by blank lines.
    pub fn parse(text: &str) -> Result<Mask> {
        parse_mask(text)
    }

    pub fn to_text(&self) -> String {
        let d = self.dim;
        let r = self.rank as i64;
        let side = 2 * self.rank + 1;
        let mut out = format!("DIM {d}\nRANK {}\n", self.rank);
        let rows = side.pow(d as u32 - 1);
        let mut o = vec![0i64; d];
        for row in 0..rows {
            if d >= 3 && row > 0 && row % side == 0 {
                out.push('\n');
            }
            let mut rem = row;
            for axis in (0..d - 1).rev() {
                o[axis] = (rem % side) as i64 - r;
                rem /= side;
            }
            for c in -r..=r {
                o[d - 1] = c;
                out.push(if self.contains(&o) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

/// Parses a mask file; see [`Mask::parse`].
pub fn parse_mask(text: &str) -> Result<Mask> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim_start().starts_with('#'));

    let dim = header_value(lines.next(), "DIM")?;
    let declared_rank = header_value(lines.next(), "RANK")?;
    if dim == 0 {
        return Err(Error::parse(1, 5, "DIM must be positive"));
    }
    let side = 2 * declared_rank + 1;
    let r = declared_rank as i64;
    let expected_rows = side.pow(dim as u32 - 1);

    let mut offsets = Vec::new();
    let mut row = 0usize;
    let mut last_line = 2;
    for (n, line) in lines {
        last_line = n;
        if line.trim().is_empty() {
            continue;
        }
        if row == expected_rows {
            return Err(Error::parse(
                n,
                1,
                format!("more than {expected_rows} rows in a rank-{declared_rank} block"),
            ));
        }
        let chars: Vec<char> = line.trim().chars().collect();
        if chars.len() != side {
            return Err(Error::parse(
                n,
                chars.len().min(side) + 1,
                format!("row must have {side} characters, found {}", chars.len()),
            ));
        }
        let mut prefix = vec![0i64; dim];
        let mut rem = row;
        for axis in (0..dim - 1).rev() {
            prefix[axis] = (rem % side) as i64 - r;
            rem /= side;
        }
        for (col, ch) in chars.iter().enumerate() {
            match ch {
                '1' => {
                    let mut o = prefix.clone();
                    o[dim - 1] = col as i64 - r;
                    offsets.push(o);
                }
                '0' => {}
                _ => {
                    return Err(Error::parse(
                        n,
                        col + 1,
                        format!("expected '0' or '1', found {ch:?}"),
                    ))
                }
            }
        }
        row += 1;
    }
    if row != expected_rows {
        return Err(Error::parse(
            last_line,
            1,
            format!("expected {expected_rows} rows, found {row}"),
        ));
    }
    if offsets.is_empty() {
        return Err(Error::parse(last_line, 1, "mask is empty"));
    }
    let mask = Mask::from_offsets(dim, offsets)?;
    if mask.rank != declared_rank {
        return Err(Error::parse(
            2,
            6,
            format!(
                "declared RANK {declared_rank} but offsets reach rank {}",
                mask.rank
            ),
        ));
    }
    validate_mask_symmetry(&mask).map_err(|v| Error::Symmetry(v.to_string()))?;
    Ok(mask)
}

fn header_value(line: Option<(usize, &str)>, key: &str) -> Result<usize> {
    let (n, line) = line.ok_or_else(|| Error::parse(1, 1, format!("missing `{key}` header")))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(key) {
        return Err(Error::parse(n, 1, format!("expected `{key} <n>`")));
    }
    parts.next().and_then(|v| v.parse().ok()).ok_or_else(|| {
        Error::parse(
            n,
            key.len() + 2,
            format!("`{key}` needs a non-negative integer"),
        )
    })
}

/// Checks that the offset set is invariant under every symmetry of the
/// d-cube, reporting the first violation found.
pub fn validate_mask_symmetry(mask: &Mask) -> std::result::Result<(), SymmetryViolation> {
    for element in cube_group(mask.dim) {
        for offset in &mask.offsets {
            let image = element.apply(offset);
            if !mask.contains(&image) {
                return Err(SymmetryViolation {
                    offset: offset.clone(),
                    image,
                    element,
                });
            }
        }
    }
    Ok(())
}

pub fn mask_parity_balance(mask: &Mask) -> ParityBalance {
    let even_count = mask
        .offsets
        .iter()
        .filter(|o| o.iter().sum::<i64>().rem_euclid(2) == 0)
        .count();
    ParityBalance {
        even_count,
        odd_count: mask.offsets.len() - even_count,
    }
}
