use std::fmt;

use serde::{Deserialize, Serialize};

/// One cell of the automaton. `A` is the quiescent ("white") state, `B` is
/// "blue" and `C` is "red".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CellState {
    A,
    B,
    C,
}

impl CellState {
    pub const ALL: [CellState; 3] = [CellState::A, CellState::B, CellState::C];

    pub fn to_char(self) -> char {
        match self {
            CellState::A => 'A',
            CellState::B => 'B',
            CellState::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'A' => Some(CellState::A),
            'B' => Some(CellState::B),
            'C' => Some(CellState::C),
            _ => None,
        }
    }

    /// Swaps `B` and `C`, fixes `A`.
    #[inline]
    pub fn transliterated(self) -> Self {
        match self {
            CellState::A => CellState::A,
            CellState::B => CellState::C,
            CellState::C => CellState::B,
        }
    }

    /// Law (I), applied when no mask neighbor is `C`.
    #[inline]
    pub fn law_one(self) -> Self {
        self.transliterated()
    }

    /// Law (II), applied when at least one mask neighbor is `C`.
    #[inline]
    pub fn law_two(self) -> Self {
        match self {
            CellState::A => CellState::C,
            CellState::B => CellState::A,
            CellState::C => CellState::B,
        }
    }

    #[inline]
    pub fn is_a(self) -> bool {
        self == CellState::A
    }
}

impl fmt::Display for CellState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char_round_trip_is_bijective() {
        let chars: Vec<char> = CellState::ALL.iter().map(|s| s.to_char()).collect();
        assert_eq!(chars, vec!['A', 'B', 'C']);
        for s in CellState::ALL {
            assert_eq!(CellState::from_char(s.to_char()), Some(s));
        }
        assert_eq!(CellState::from_char('a'), None);
        assert_eq!(CellState::from_char('0'), None);
    }

    #[test]
    fn laws_are_bijections() {
        for law in [CellState::law_one, CellState::law_two] {
            let mut image: Vec<CellState> = CellState::ALL.iter().map(|&s| law(s)).collect();
            image.sort();
            assert_eq!(image, CellState::ALL.to_vec());
        }
    }

    #[test]
    fn law_tables() {
        use CellState::*;
        assert_eq!([A.law_one(), B.law_one(), C.law_one()], [A, C, B]);
        assert_eq!([A.law_two(), B.law_two(), C.law_two()], [C, A, B]);
    }
}
