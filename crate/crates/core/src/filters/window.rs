use crate::engine::Cursor;
use crate::error::{Error, Result};
use crate::lattice::{Grid, Mask};

/// Frames before the gap.
pub const BEFORE: usize = 2;
/// Frames in a window.
pub const WINDOW_LEN: usize = 6;

/// Six consecutive frames `t-2 ..= t+3` around the gap between frames `t`
/// and `t+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameWindow {
    center_gap: i64,
    frames: Vec<Grid>,
}

impl FrameWindow {
    pub fn new(center_gap: i64, frames: Vec<Grid>) -> Result<FrameWindow> {
        if frames.len() != WINDOW_LEN {
            return Err(Error::InvalidGrid(format!(
                "a frame window holds {WINDOW_LEN} frames, got {}",
                frames.len()
            )));
        }
        if frames.iter().any(|f| !f.same_shape(&frames[0])) {
            return Err(Error::InvalidGrid("window frames differ in shape".into()));
        }
        Ok(FrameWindow { center_gap, frames })
    }

    pub fn center_gap(&self) -> i64 {
        self.center_gap
    }

    pub fn frames(&self) -> &[Grid] {
        &self.frames
    }

    /// Frame at absolute time `t`, if inside the window.
    pub fn at(&self, t: i64) -> Option<&Grid> {
        let k = t - (self.center_gap - BEFORE as i64);
        usize::try_from(k).ok().and_then(|k| self.frames.get(k))
    }

    /// The pair `(t - i, t + 1 + i)` that index-`i` filters compare.
    pub fn pair(&self, i: usize) -> (&Grid, &Grid) {
        assert!(i <= BEFORE, "filter index must be 0, 1 or 2");
        (&self.frames[BEFORE - i], &self.frames[BEFORE + 1 + i])
    }

    pub fn shape(&self) -> &Grid {
        &self.frames[0]
    }

    /// True when each frame is the forward step of the previous one.
    pub fn is_consecutive(&self, mask: &Mask) -> Result<bool> {
        for pair in self.frames.windows(2) {
            if crate::engine::step_forward(&pair[0], mask)? != pair[1] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The window drawn between frames `t` and `t + 1`. Frames before the start
/// come from exact backward steps.
pub fn frame_window(cursor: &mut Cursor, t: i64) -> FrameWindow {
    let frames = cursor
        .frames(t - BEFORE as i64, WINDOW_LEN)
        .iter()
        .map(|p| p.to_grid())
        .collect();
    FrameWindow {
        center_gap: t,
        frames,
    }
}
