use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::CellState;
use crate::error::{Error, Result};

/// Behavior of one lattice axis at its ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// The axis is closed into a circle.
    Periodic,
    /// Cells past either end read as `A`.
    Open,
}

impl Boundary {
    pub fn flag(self) -> char {
        match self {
            Boundary::Periodic => 'P',
            Boundary::Open => 'O',
        }
    }

    pub fn from_flag(c: char) -> Option<Self> {
        match c {
            'P' | 'p' => Some(Boundary::Periodic),
            'O' | 'o' => Some(Boundary::Open),
            _ => None,
        }
    }

    /// Parses either a flag string (`"PPO"`) or one of the words
    /// `periodic`/`open`, which then applies to every axis.
    pub fn parse_list(text: &str, d: usize) -> Result<Vec<Boundary>> {
        match text.to_ascii_lowercase().as_str() {
            "periodic" | "torus" => return Ok(vec![Boundary::Periodic; d]),
            "open" => return Ok(vec![Boundary::Open; d]),
            _ => {}
        }
        let flags: Option<Vec<Boundary>> = text.chars().map(Boundary::from_flag).collect();
        match flags {
            Some(flags) if flags.len() == d => Ok(flags),
            _ => Err(Error::Config(format!(
                "boundary {text:?} must be `periodic`, `open`, or {d} flags of P/O"
            ))),
        }
    }
}

/// A dense d-dimensional lattice of cells stored in row-major order (the
/// last axis varies fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    dims: Vec<usize>,
    boundary: Vec<Boundary>,
    cells: Vec<CellState>,
}

impl Grid {
    /// An all-`A` grid.
    pub fn new(dims: &[usize], boundary: &[Boundary]) -> Result<Self> {
        let len = checked_len(dims, boundary)?;
        Ok(Grid {
            dims: dims.to_vec(),
            boundary: boundary.to_vec(),
            cells: vec![CellState::A; len],
        })
    }

    pub fn torus(dims: &[usize]) -> Result<Self> {
        Grid::new(dims, &vec![Boundary::Periodic; dims.len()])
    }

    pub fn from_cells(
        dims: &[usize],
        boundary: &[Boundary],
        cells: Vec<CellState>,
    ) -> Result<Self> {
        let len = checked_len(dims, boundary)?;
        if cells.len() != len {
            return Err(Error::InvalidGrid(format!(
                "expected {len} cells for extents {dims:?}, got {}",
                cells.len()
            )));
        }
        Ok(Grid {
            dims: dims.to_vec(),
            boundary: boundary.to_vec(),
            cells,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn boundary(&self) -> &[Boundary] {
        &self.boundary
    }

    pub fn cells(&self) -> &[CellState] {
        &self.cells
    }

    pub fn cells_mut(&mut self) -> &mut [CellState] {
        &mut self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn same_shape(&self, other: &Grid) -> bool {
        self.dims == other.dims && self.boundary == other.boundary
    }

    /// Linear index of an in-range coordinate.
    pub fn linear(&self, coord: &[usize]) -> usize {
        debug_assert_eq!(coord.len(), self.dims.len());
        coord
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&c, &e)| acc * e + c)
    }

    /// Coordinate of a linear index.
    pub fn coord(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for axis in (0..self.dims.len()).rev() {
            out[axis] = index % self.dims[axis];
            index /= self.dims[axis];
        }
        out
    }

    /// Resolves a possibly out-of-range coordinate: periodic axes wrap,
    /// open axes yield `None` when out of range.
    pub fn resolve(&self, coord: &[i64]) -> Option<usize> {
        debug_assert_eq!(coord.len(), self.dims.len());
        let mut index = 0usize;
        for ((&c, &e), &b) in coord.iter().zip(&self.dims).zip(&self.boundary) {
            let e_i = e as i64;
            let c = match b {
                Boundary::Periodic => c.rem_euclid(e_i),
                Boundary::Open if (0..e_i).contains(&c) => c,
                Boundary::Open => return None,
            };
            index = index * e + c as usize;
        }
        Some(index)
    }

    /// Reads a cell with the grid's boundary semantics.
    pub fn get(&self, coord: &[i64]) -> CellState {
        self.resolve(coord).map_or(CellState::A, |i| self.cells[i])
    }

    pub fn at(&self, coord: &[usize]) -> CellState {
        self.cells[self.linear(coord)]
    }

    pub fn set(&mut self, coord: &[usize], state: CellState) {
        let i = self.linear(coord);
        self.cells[i] = state;
    }

    /// `(N_A, N_B, N_C)`.
    pub fn count_states(&self) -> (usize, usize, usize) {
        let mut counts = [0usize; 3];
        for &s in &self.cells {
            counts[s as usize] += 1;
        }
        (counts[0], counts[1], counts[2])
    }

    pub fn count_c(&self) -> usize {
        self.cells.iter().filter(|&&s| s == CellState::C).count()
    }

    /// Swaps `B` and `C` everywhere.
    pub fn transliterate(&self) -> Grid {
        Grid {
            dims: self.dims.clone(),
            boundary: self.boundary.clone(),
            cells: self.cells.iter().map(|s| s.transliterated()).collect(),
        }
    }

    /// Serializes to the `DCS1` text format.
    pub fn to_text(&self) -> String {
        let d = self.dims.len();
        let extents: Vec<String> = self.dims.iter().map(|e| e.to_string()).collect();
        let flags: String = self.boundary.iter().map(|b| b.flag()).collect();
        let mut out = format!("DCS1 {d} {} {flags}\n", extents.join("x"));
        let row_len = self.dims[d - 1];
        let block = if d >= 2 { self.dims[d - 2] } else { 1 };
        for (r, row) in self.cells.chunks(row_len).enumerate() {
            if r > 0 && d >= 3 && r % block == 0 {
                out.push('\n');
            }
            for s in row {
                out.push(s.to_char());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `DCS1` text format.
    pub fn parse(text: &str) -> Result<Grid> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| Error::parse(1, 1, "empty grid file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 4 || fields[0] != "DCS1" {
            return Err(Error::parse(
                1,
                1,
                "expected header `DCS1 <d> <extents> <flags>`",
            ));
        }
        let d: usize = fields[1]
            .parse()
            .map_err(|_| Error::parse(1, 6, "dimension is not an integer"))?;
        let dims: Vec<usize> = fields[2]
            .split('x')
            .map(|e| e.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(1, 8, "extents must look like 70x70"))?;
        if dims.len() != d {
            return Err(Error::parse(
                1,
                8,
                format!("{d} extents expected, found {}", dims.len()),
            ));
        }
        let boundary = Boundary::parse_list(fields[3], d)
            .map_err(|e| Error::parse(1, header.len(), e.to_string()))?;
        let len = checked_len(&dims, &boundary).map_err(|e| Error::parse(1, 1, e.to_string()))?;

        let row_len = dims[d - 1];
        let mut cells = Vec::with_capacity(len);
        for (n, line) in lines {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if line.chars().count() != row_len {
                return Err(Error::parse(
                    n + 1,
                    1,
                    format!("row has {} cells, expected {row_len}", line.chars().count()),
                ));
            }
            for (col, ch) in line.chars().enumerate() {
                let s = CellState::from_char(ch).ok_or_else(|| {
                    Error::parse(n + 1, col + 1, format!("unexpected character {ch:?}"))
                })?;
                cells.push(s);
            }
            if cells.len() > len {
                return Err(Error::parse(n + 1, 1, "too many rows"));
            }
        }
        if cells.len() != len {
            let lines = text.lines().count();
            return Err(Error::parse(
                lines,
                1,
                format!("expected {len} cells, read {}", cells.len()),
            ));
        }
        Grid::from_cells(&dims, &boundary, cells)
    }

    /// One line per row, for debugging small grids.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for row in self.cells.chunks(self.dims[self.dims.len() - 1]) {
            for s in row {
                let _ = write!(out, "{s}");
            }
            out.push('\n');
        }
        out
    }
}

fn checked_len(dims: &[usize], boundary: &[Boundary]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::InvalidGrid("a grid needs at least one axis".into()));
    }
    if dims.len() != boundary.len() {
        return Err(Error::InvalidGrid(format!(
            "{} extents but {} boundary flags",
            dims.len(),
            boundary.len()
        )));
    }
    if dims.contains(&0) {
        return Err(Error::InvalidGrid(format!(
            "extents must be positive: {dims:?}"
        )));
    }
    dims.iter()
        .try_fold(1usize, |acc, &e| acc.checked_mul(e))
        .ok_or_else(|| Error::InvalidGrid("grid too large".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_reads_wrap() {
        let mut g = Grid::torus(&[3, 4]).unwrap();
        g.set(&[0, 0], CellState::B);
        assert_eq!(g.get(&[3, 4]), CellState::B);
        assert_eq!(g.get(&[-3, -4]), CellState::B);
        assert_eq!(g.get(&[-1, 0]), CellState::A);
    }

    #[test]
    fn open_reads_outside_are_a() {
        let mut g = Grid::new(&[3, 3], &[Boundary::Open, Boundary::Periodic]).unwrap();
        for c in g.cells_mut() {
            *c = CellState::C;
        }
        assert_eq!(g.get(&[-1, 0]), CellState::A);
        assert_eq!(g.get(&[3, 1]), CellState::A);
        assert_eq!(g.get(&[100, -7]), CellState::A);
        // the periodic axis still wraps
        assert_eq!(g.get(&[0, -1]), CellState::C);
        assert_eq!(g.get(&[2, 5]), CellState::C);
    }

    #[test]
    fn text_round_trip_3d() {
        let mut g = Grid::new(
            &[2, 2, 3],
            &[Boundary::Periodic, Boundary::Open, Boundary::Periodic],
        )
        .unwrap();
        g.set(&[1, 0, 2], CellState::B);
        g.set(&[0, 1, 0], CellState::C);
        let text = g.to_text();
        assert!(text.starts_with("DCS1 3 2x2x3 POP\n"));
        assert!(text.contains("\n\n"));
        assert_eq!(Grid::parse(&text).unwrap(), g);
    }

    #[test]
    fn parse_rejects_bad_rows() {
        let err = Grid::parse("DCS1 2 2x2 PP\nAB\nAX\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Parse {
                    line: 3,
                    column: 2,
                    ..
                }
            ),
            "{err}"
        );
        let err = Grid::parse("DCS1 2 2x2 PP\nABA\nAA\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(Grid::parse("DCS1 2 2x2 PP\nAB\n").is_err());
        assert!(Grid::parse("DCS2 2 2x2 PP\nAB\nAB\n").is_err());
    }

    #[test]
    fn coord_and_linear_agree() {
        let g = Grid::torus(&[3, 4, 5]).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.linear(&g.coord(i)), i);
        }
    }

    #[test]
    fn count_states_all_a() {
        let g = Grid::torus(&[3, 3]).unwrap();
        assert_eq!(g.count_states(), (9, 0, 0));
    }

    #[test]
    fn transliterate_single_b() {
        let mut g = Grid::torus(&[6, 6]).unwrap();
        g.set(&[3, 4], CellState::B);
        let t = g.transliterate();
        assert_eq!(t.at(&[3, 4]), CellState::C);
        assert_eq!(t.count_states(), (35, 0, 1));
        let all_a = Grid::torus(&[4, 4]).unwrap();
        assert_eq!(all_a.transliterate(), all_a);
    }
}
