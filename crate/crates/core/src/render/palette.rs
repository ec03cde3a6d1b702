use serde::{Deserialize, Serialize};

use crate::filters::PatternClass;
use crate::lattice::CellState;

pub type Rgb = [u8; 3];

/// Colors for every value the renderer draws. Any field can be overridden
/// from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Palette {
    pub state_a: Rgb,
    pub state_b: Rgb,
    pub state_c: Rgb,
    /// `A_F` fill for counts 0..=6; index 2 is used for patterns that are
    /// neither Bank nor River.
    pub a_filter: [Rgb; 7],
    pub bank: Rgb,
    pub river: Rgb,
    pub boundary_plus: Rgb,
    pub boundary_minus: Rgb,
    pub cross: Rgb,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            state_a: [255, 255, 255],
            state_b: [40, 90, 220],
            state_c: [220, 40, 40],
            a_filter: [
                [250, 220, 40],
                [40, 90, 220],
                [200, 200, 200],
                [220, 40, 40],
                [140, 50, 170],
                [240, 140, 30],
                [120, 220, 230],
            ],
            bank: [150, 150, 150],
            river: [40, 170, 70],
            boundary_plus: [0, 0, 0],
            boundary_minus: [255, 255, 255],
            cross: [30, 30, 30],
        }
    }
}

impl Palette {
    pub fn state(&self, s: CellState) -> Rgb {
        match s {
            CellState::A => self.state_a,
            CellState::B => self.state_b,
            CellState::C => self.state_c,
        }
    }

    pub fn a_filter(&self, count: u8, class: PatternClass) -> Rgb {
        match (count, class) {
            (2, PatternClass::Bank) => self.bank,
            (2, PatternClass::River) => self.river,
            (n, _) => self.a_filter[usize::from(n.min(6))],
        }
    }

    /// Stroke for a `B_F` value, none for 0.
    pub fn boundary(&self, v: i8) -> Option<Rgb> {
        match v.signum() {
            1 => Some(self.boundary_plus),
            -1 => Some(self.boundary_minus),
            _ => None,
        }
    }
}

/// Mixes `c` toward white, keeping `keep` of its distance from it.
pub fn fade(c: Rgb, keep: f32) -> Rgb {
    c.map(|v| (255.0 - (255.0 - f32::from(v)) * keep).round() as u8)
}
