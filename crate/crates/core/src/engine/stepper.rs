use std::collections::BTreeMap;
use std::sync::Arc;

use super::planes::{or_displaced, Layout, Planes};
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Grid, Mask};

const NO_ROW: u32 = u32::MAX;

/// Word-parallel stepper for one (lattice, mask) pair.
///
/// The C-presence map is the C-plane dilated by the mask. Offsets are
/// grouped by their displacement across rows; each group shares one set of
/// displacements along the row, and the dilation of the C-plane by each
/// distinct set is computed once per step.
#[derive(Clone, Debug)]
pub struct Engine {
    layout: Arc<Layout>,
    /// Distinct displacements along the row.
    dxs: Vec<i64>,
    /// Distinct sets of along-row displacements, as indices into `dxs`.
    dx_sets: Vec<Vec<usize>>,
    /// One entry per distinct cross-row displacement.
    groups: Vec<RowGroup>,
    shifted: Vec<u64>,
    dilated: Vec<u64>,
    presence: Vec<u64>,
}

#[derive(Clone, Debug)]
struct RowGroup {
    set: usize,
    /// Source row for each destination row, `NO_ROW` when it falls off an
    /// open axis.
    source: Vec<u32>,
}

impl Engine {
    pub fn new(mask: &Mask, dims: &[usize], boundary: &[Boundary]) -> Result<Engine> {
        let layout = Arc::new(Layout::new(dims, boundary)?);
        Engine::with_layout(mask, layout)
    }

    pub fn for_grid(mask: &Mask, grid: &Grid) -> Result<Engine> {
        Engine::new(mask, grid.dims(), grid.boundary())
    }

    pub(crate) fn with_layout(mask: &Mask, layout: Arc<Layout>) -> Result<Engine> {
        let d = layout.dims.len();
        if mask.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: mask.dim(),
            });
        }
        let mut by_prefix: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        for o in mask.offsets() {
            by_prefix
                .entry(o[..d - 1].to_vec())
                .or_default()
                .push(o[d - 1]);
        }
        let mut dxs: Vec<i64> = mask.offsets().iter().map(|o| o[d - 1]).collect();
        dxs.sort_unstable();
        dxs.dedup();

        let mut dx_sets: Vec<Vec<usize>> = Vec::new();
        let mut groups = Vec::with_capacity(by_prefix.len());
        let prefix_grid = Grid::new(
            &layout.dims[..d - 1]
                .iter()
                .copied()
                .chain([1])
                .collect::<Vec<_>>(),
            &layout.boundary[..d - 1]
                .iter()
                .copied()
                .chain([Boundary::Periodic])
                .collect::<Vec<_>>(),
        )?;
        for (prefix, mut set) in by_prefix {
            set.sort_unstable();
            let set: Vec<usize> = set
                .iter()
                .map(|dx| dxs.binary_search(dx).expect("collected above"))
                .collect();
            let set_index = match dx_sets.iter().position(|s| *s == set) {
                Some(i) => i,
                None => {
                    dx_sets.push(set);
                    dx_sets.len() - 1
                }
            };
            let mut source = Vec::with_capacity(layout.n_rows);
            let mut probe = vec![0i64; d];
            for row in 0..layout.n_rows {
                let coord = prefix_grid.coord(row);
                for axis in 0..d - 1 {
                    probe[axis] = coord[axis] as i64 + prefix[axis];
                }
                probe[d - 1] = 0;
                source.push(prefix_grid.resolve(&probe).map_or(NO_ROW, |r| r as u32));
            }
            groups.push(RowGroup {
                set: set_index,
                source,
            });
        }

        let words = layout.words();
        Ok(Engine {
            shifted: vec![0; dxs.len() * words],
            dilated: vec![0; dx_sets.len() * words],
            presence: vec![0; words],
            layout,
            dxs,
            dx_sets,
            groups,
        })
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn load(&self, grid: &Grid) -> Result<Planes> {
        let planes = Planes::from_grid_with(self.layout.clone(), grid);
        if grid.dims() != self.layout.dims() || grid.boundary() != self.layout.boundary() {
            return Err(Error::InvalidGrid(format!(
                "grid {:?} does not match engine lattice {:?}",
                grid.dims(),
                self.layout.dims()
            )));
        }
        Ok(planes)
    }

    /// Fills `self.presence` with the mask dilation of `plane`.
    fn dilate(&mut self, plane: &[u64]) {
        let l = &*self.layout;
        let wpr = l.words_per_row;
        let words = l.words();
        let periodic = l.boundary[l.dims.len() - 1] == Boundary::Periodic;

        self.shifted.fill(0);
        for (k, &dx) in self.dxs.iter().enumerate() {
            let out = &mut self.shifted[k * words..(k + 1) * words];
            for row in 0..l.n_rows {
                let r = row * wpr..(row + 1) * wpr;
                or_displaced(
                    &plane[r.clone()],
                    l.row_len,
                    dx,
                    periodic,
                    l.tail_mask,
                    &mut out[r],
                );
            }
        }

        self.dilated.fill(0);
        for (s, set) in self.dx_sets.iter().enumerate() {
            let out = &mut self.dilated[s * words..(s + 1) * words];
            for &k in set {
                let src = &self.shifted[k * words..(k + 1) * words];
                for (o, i) in out.iter_mut().zip(src) {
                    *o |= i;
                }
            }
        }

        self.presence.fill(0);
        for g in &self.groups {
            let src = &self.dilated[g.set * words..(g.set + 1) * words];
            for (row, &from) in g.source.iter().enumerate() {
                if from == NO_ROW {
                    continue;
                }
                let from = from as usize * wpr;
                let dst = &mut self.presence[row * wpr..(row + 1) * wpr];
                for (o, i) in dst.iter_mut().zip(&src[from..from + wpr]) {
                    *o |= i;
                }
            }
        }
    }

    /// Bit `v` is set iff some mask offset `o` has a `C` at `v + o`.
    pub fn presence_bits(&mut self, planes: &Planes) -> Result<Vec<u64>> {
        planes.check_layout(&self.layout)?;
        self.dilate(&planes.c);
        Ok(self.presence.clone())
    }

    /// One forward step in place.
    ///
    /// `C` always becomes `B`. Where a `C` is in view, `A` becomes `C` and
    /// `B` becomes `A`; elsewhere `B` becomes `C` and `A` stays.
    pub fn step_in_place(&mut self, planes: &mut Planes) {
        debug_assert_eq!(*planes.layout, *self.layout);
        self.dilate(&planes.c);
        let wpr = self.layout.words_per_row;
        for (w, p) in self.presence.iter().enumerate() {
            let b = planes.b[w];
            let c = planes.c[w];
            let a = !(b | c) & self.layout.word_mask(w % wpr);
            planes.b[w] = c;
            planes.c[w] = (p & a) | (!p & b);
        }
    }

    /// One backward step in place; the exact inverse of [`step_in_place`].
    ///
    /// [`step_in_place`]: Engine::step_in_place
    pub fn step_back_in_place(&mut self, planes: &mut Planes) {
        debug_assert_eq!(*planes.layout, *self.layout);
        // T∘F∘T written out on the planes: the roles of B and C swap.
        self.dilate(&planes.b);
        let wpr = self.layout.words_per_row;
        for (w, p) in self.presence.iter().enumerate() {
            let b = planes.b[w];
            let c = planes.c[w];
            let a = !(b | c) & self.layout.word_mask(w % wpr);
            planes.c[w] = b;
            planes.b[w] = (p & a) | (!p & c);
        }
    }

    pub fn step(&mut self, planes: &Planes) -> Result<Planes> {
        planes.check_layout(&self.layout)?;
        let mut next = planes.clone();
        self.step_in_place(&mut next);
        Ok(next)
    }

    pub fn step_back(&mut self, planes: &Planes) -> Result<Planes> {
        planes.check_layout(&self.layout)?;
        let mut prev = planes.clone();
        self.step_back_in_place(&mut prev);
        Ok(prev)
    }
}
