//! Raster output: state frames and filter overlays as binary PPM.

mod palette;

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use palette::{fade, Palette, Rgb};

use crate::engine::Run;
use crate::error::{Error, Result};
use crate::filters::{a_filter, b_filter, c_filter, frame_window, FrameWindow, PatternClass};
use crate::lattice::Grid;

/// An RGB raster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<Rgb>,
}

impl Image {
    pub fn new(width: usize, height: usize, fill: Rgb) -> Image {
        Image {
            width,
            height,
            pixels: vec![fill; width * height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        self.pixels[y * self.width + x] = c;
    }

    fn fill_block(&mut self, x0: usize, y0: usize, scale: usize, c: Rgb) {
        for y in y0..y0 + scale {
            self.pixels[y * self.width + x0..y * self.width + x0 + scale].fill(c);
        }
    }

    /// Binary PPM (`P6`) bytes.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for p in &self.pixels {
            out.extend_from_slice(p);
        }
        out
    }

    pub fn write_ppm(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        f.write_all(&self.to_ppm()).map_err(|e| Error::io(path, e))
    }
}

/// A 1D, 2D or 3D lattice seen as a stack of 2D sheets.
struct Sheets {
    count: usize,
    rows: usize,
    cols: usize,
}

impl Sheets {
    fn of(dims: &[usize]) -> Result<Sheets> {
        match *dims {
            [c] => Ok(Sheets {
                count: 1,
                rows: 1,
                cols: c,
            }),
            [r, c] => Ok(Sheets {
                count: 1,
                rows: r,
                cols: c,
            }),
            [s, r, c] => Ok(Sheets {
                count: s,
                rows: r,
                cols: c,
            }),
            _ => Err(Error::Unsupported(format!(
                "rendering a {}-dimensional lattice",
                dims.len()
            ))),
        }
    }

    fn cell(&self, sheet: usize, row: usize, col: usize) -> usize {
        (sheet * self.rows + row) * self.cols + col
    }

    /// Axis index that runs along rows (`row`) and along columns (`col`).
    fn in_plane_axes(&self, ndim: usize) -> (Option<usize>, usize) {
        match ndim {
            1 => (None, 0),
            2 => (Some(0), 1),
            _ => (Some(1), 2),
        }
    }
}

/// One image per sheet (one for 1D and 2D, one per slice along the first
/// axis for 3D), `scale` pixels per cell.
pub fn render_state(grid: &Grid, palette: &Palette, scale: usize) -> Result<Vec<Image>> {
    let sh = Sheets::of(grid.dims())?;
    let scale = scale.max(1);
    let cells = grid.cells();
    Ok((0..sh.count)
        .map(|s| {
            let mut img = Image::new(sh.cols * scale, sh.rows * scale, palette.state_a);
            for r in 0..sh.rows {
                for c in 0..sh.cols {
                    img.fill_block(
                        c * scale,
                        r * scale,
                        scale,
                        palette.state(cells[sh.cell(s, r, c)]),
                    );
                }
            }
            img
        })
        .collect())
}

/// Which filter layers to draw.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterSet {
    pub a: bool,
    pub b: [bool; 3],
    pub c: [bool; 3],
}

impl FilterSet {
    /// Parses a comma list such as `a,b0,c1`.
    pub fn parse(text: &str) -> Result<FilterSet> {
        let mut set = FilterSet::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || Error::Config(format!("unknown filter {item:?}; use a, b0..b2, c0..c2"));
            let index = |s: &str| -> Result<usize> {
                s.parse::<usize>().ok().filter(|&i| i < 3).ok_or_else(bad)
            };
            match item.split_at(1) {
                ("a", "") => set.a = true,
                ("b", i) => set.b[index(i)?] = true,
                ("c", i) => set.c[index(i)?] = true,
                _ => return Err(bad()),
            }
        }
        Ok(set)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderOptions {
    pub scale: usize,
    /// Draw Bank cells faded, so structure behind them shows through a stack
    /// of 3D slices.
    pub transparent_bank: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 4,
            transparent_bank: false,
        }
    }
}

/// `A_F` as cell fill, then `B_F` as strokes on each cell's far edge, then
/// `C_F` as crosses. Only in-sheet boundaries are stroked for 3D.
pub fn render_window(
    window: &FrameWindow,
    which: FilterSet,
    palette: &Palette,
    opts: RenderOptions,
) -> Result<Vec<Image>> {
    let shape = window.shape();
    let sh = Sheets::of(shape.dims())?;
    let scale = opts.scale.max(1);
    let mut images: Vec<Image> = (0..sh.count)
        .map(|_| Image::new(sh.cols * scale, sh.rows * scale, palette.state_a))
        .collect();
    let each_cell = |images: &mut Vec<Image>,
                     f: &mut dyn FnMut(&mut Image, usize, usize, usize)| {
        for (s, img) in images.iter_mut().enumerate() {
            for r in 0..sh.rows {
                for c in 0..sh.cols {
                    f(img, r, c, sh.cell(s, r, c));
                }
            }
        }
    };

    if which.a {
        let af = a_filter(window);
        each_cell(&mut images, &mut |img, r, c, v| {
            let mut color = palette.a_filter(af.values[v], af.pattern_class[v]);
            if opts.transparent_bank && af.pattern_class[v] == PatternClass::Bank {
                color = fade(color, 0.3);
            }
            img.fill_block(c * scale, r * scale, scale, color);
        });
    }

    let (row_axis, col_axis) = sh.in_plane_axes(shape.ndim());
    for i in (0..3).filter(|&i| which.b[i]) {
        let across_cols = b_filter(window, i, col_axis);
        let across_rows = row_axis.map(|axis| b_filter(window, i, axis));
        each_cell(&mut images, &mut |img, r, c, v| {
            // boundary with the next column: right edge
            if let Some(color) = palette.boundary(across_cols.values[v]) {
                for y in r * scale..(r + 1) * scale {
                    img.set((c + 1) * scale - 1, y, color);
                }
            }
            // boundary with the next row: bottom edge
            if let Some(color) = across_rows
                .as_ref()
                .and_then(|b| palette.boundary(b.values[v]))
            {
                for x in c * scale..(c + 1) * scale {
                    img.set(x, (r + 1) * scale - 1, color);
                }
            }
        });
    }

    for i in (0..3).filter(|&i| which.c[i]) {
        let cf = c_filter(window, i);
        each_cell(&mut images, &mut |img, r, c, v| {
            if cf.values[v] == 0 {
                return;
            }
            if scale < 3 {
                img.set(c * scale, r * scale, palette.cross);
                return;
            }
            for k in 1..scale - 1 {
                img.set(c * scale + k, r * scale + k, palette.cross);
                img.set(c * scale + scale - 1 - k, r * scale + k, palette.cross);
            }
        });
    }
    Ok(images)
}

/// Filters of a recorded run between frames `t` and `t + 1`.
pub fn render_filters(
    run: &Run,
    t: i64,
    which: FilterSet,
    palette: &Palette,
    opts: RenderOptions,
) -> Result<Vec<Image>> {
    let mut cursor = run.cursor()?;
    let window = frame_window(&mut cursor, t);
    render_window(&window, which, palette, opts)
}
