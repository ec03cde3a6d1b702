use std::collections::VecDeque;

use super::{Cursor, Planes};
use crate::error::Result;
use crate::filters::{a_filter, FrameWindow, BEFORE, WINDOW_LEN};
use crate::lattice::{Grid, Mask};
use crate::structures::label_river_components;

pub const DEFAULT_SCREEN_HORIZON: u64 = 200;

/// Streaming check for a torus-wrapping river. Feed consecutive frames; once
/// six are buffered every further frame completes one window.
#[derive(Clone, Debug, Default)]
pub struct SuperRiverScreen {
    frames: VecDeque<Grid>,
    first_time: i64,
    found_at: Option<i64>,
}

impl SuperRiverScreen {
    /// `first_time` is the time of the first frame that will be pushed.
    pub fn new(first_time: i64) -> Self {
        SuperRiverScreen {
            frames: VecDeque::with_capacity(WINDOW_LEN),
            first_time,
            found_at: None,
        }
    }

    /// Gap of the first window that held a SuperRiver.
    pub fn found_at(&self) -> Option<i64> {
        self.found_at
    }

    pub fn push(&mut self, frame: &Planes) -> bool {
        if self.found_at.is_some() {
            return true;
        }
        if self.frames.len() == WINDOW_LEN {
            self.frames.pop_front();
            self.first_time += 1;
        }
        self.frames.push_back(frame.to_grid());
        if self.frames.len() < WINDOW_LEN {
            return false;
        }
        let gap = self.first_time + BEFORE as i64;
        let window =
            FrameWindow::new(gap, self.frames.iter().cloned().collect()).expect("six frames");
        let af = a_filter(&window);
        if label_river_components(&af).iter().any(|c| c.is_super()) {
            self.found_at = Some(gap);
        }
        self.found_at.is_some()
    }
}

/// True iff a window drawn at some gap `t` in `0..horizon` shows a River
/// component that winds around the torus.
pub fn detect_superriver_early(start: &Grid, mask: &Mask, horizon: u64) -> Result<bool> {
    let mut cursor = Cursor::new(start, mask)?;
    let first = -(BEFORE as i64);
    cursor.seek(first);
    let mut screen = SuperRiverScreen::new(first);
    let last = horizon as i64 + (WINDOW_LEN - BEFORE) as i64 - 1;
    if screen.push(cursor.planes()) {
        return Ok(true);
    }
    while cursor.time() < last {
        if screen.push(cursor.forward()) {
            return Ok(true);
        }
    }
    Ok(false)
}
