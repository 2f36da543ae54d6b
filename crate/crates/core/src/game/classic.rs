//! Textbook two-player games.

use super::FiniteGame;

pub const COOPERATE: usize = 0;
pub const DEFECT: usize = 1;

pub const HEADS: usize = 0;
pub const TAILS: usize = 1;

/// Prisoner's dilemma with temptation `t`, reward `r`, punishment `p` and
/// sucker's payoff `s`. Strategy 0 is cooperate, 1 is defect.
pub fn prisoners_dilemma_with(t: f64, r: f64, p: f64, s: f64) -> FiniteGame {
    FiniteGame::bimatrix(&[vec![r, s], vec![t, p]], &[vec![r, t], vec![s, p]])
        .expect("2x2 bimatrix is well formed")
}

/// Prisoner's dilemma with T=5, R=3, P=1, S=0.
pub fn prisoners_dilemma() -> FiniteGame {
    prisoners_dilemma_with(5.0, 3.0, 1.0, 0.0)
}

/// Matching pennies: the row player wins +1 when the coins match, the column
/// player wins +1 when they differ.
pub fn matching_pennies() -> FiniteGame {
    FiniteGame::bimatrix(
        &[vec![1.0, -1.0], vec![-1.0, 1.0]],
        &[vec![-1.0, 1.0], vec![1.0, -1.0]],
    )
    .expect("2x2 bimatrix is well formed")
}
