//! Strategic-form games, best responses and pure Nash equilibria.
//!
//! Everything here is generic over [`Game`]: a finite game with an explicit
//! payoff tensor, a continuous game over closed intervals, or any other type
//! that can evaluate payoffs and compute a best response (the pricing game in
//! [`crate::solvers`] uses a closed-form one).

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub mod classic;
mod continuous;
mod dynamics;
mod finite;

pub use continuous::{golden_section_max, ContinuousGame, PayoffOracle};
pub use dynamics::{best_response_dynamics, BrDynamicsResult};
pub use finite::{
    enumerate_pure_nash, enumerate_pure_nash_with_cap, FiniteGame, DEFAULT_PROFILE_CAP,
};

/// One action per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionProfile<A>(pub Vec<A>);

impl<A> ActionProfile<A> {
    pub fn new(actions: Vec<A>) -> Self {
        ActionProfile(actions)
    }

    pub fn into_inner(self) -> Vec<A> {
        self.0
    }
}

impl<A> Deref for ActionProfile<A> {
    type Target = [A];

    fn deref(&self) -> &[A] {
        &self.0
    }
}

impl<A> From<Vec<A>> for ActionProfile<A> {
    fn from(actions: Vec<A>) -> Self {
        ActionProfile(actions)
    }
}

/// A non-cooperative game in strategic form.
///
/// `payoff` and `best_response` may assume the profile already passed
/// [`Game::check_profile`] and that `player < player_count()`; the free
/// functions in this module perform that validation.
pub trait Game {
    type Action: Clone + PartialEq + fmt::Debug;

    fn player_count(&self) -> usize;

    /// Errors if the profile has the wrong length or an action lies outside
    /// its player's strategy set.
    fn check_profile(&self, profile: &[Self::Action]) -> Result<()>;

    fn payoff(&self, profile: &[Self::Action], player: usize) -> f64;

    /// A payoff-maximizing action for `player` with everyone else fixed.
    /// Deterministic: the same inputs always return the same action.
    fn best_response(&self, profile: &[Self::Action], player: usize, tol: f64) -> Self::Action;

    /// Distance between two actions of the same player, used as the
    /// stopping rule of best-response dynamics.
    fn action_change(&self, from: &Self::Action, to: &Self::Action) -> f64;
}

fn check_player<G: Game + ?Sized>(game: &G, player: usize) -> Result<()> {
    if player >= game.player_count() {
        return Err(Error::invalid(format!(
            "player {player} out of range for a {}-player game",
            game.player_count()
        )));
    }
    Ok(())
}

/// The payoff `player` receives at `profile`.
pub fn eval_payoff<G: Game + ?Sized>(
    game: &G,
    profile: &[G::Action],
    player: usize,
) -> Result<f64> {
    check_player(game, player)?;
    game.check_profile(profile)?;
    Ok(game.payoff(profile, player))
}

/// Best response of `player` against the other actions in `profile`.
///
/// Finite games break ties toward the lowest strategy index. Continuous games
/// return a point within `tol` of the maximizer provided the payoff is
/// unimodal in the player's own action; otherwise a local maximum.
pub fn best_response<G: Game + ?Sized>(
    game: &G,
    profile: &[G::Action],
    player: usize,
    tol: f64,
) -> Result<G::Action> {
    check_player(game, player)?;
    game.check_profile(profile)?;
    Ok(game.best_response(profile, player, tol))
}

pub(crate) fn deviation_gain<G: Game + ?Sized>(
    game: &G,
    profile: &mut [G::Action],
    player: usize,
    tol: f64,
) -> f64 {
    let current = game.payoff(profile, player);
    let br = game.best_response(profile, player, tol);
    let kept = std::mem::replace(&mut profile[player], br);
    let improved = game.payoff(profile, player);
    profile[player] = kept;
    (improved - current).max(0.0)
}

/// Largest payoff gain any single player can obtain by deviating unilaterally
/// to a best response. Always `>= 0`; the profile is a Nash equilibrium
/// (to within `tol`) iff the result is `<= tol`.
pub fn max_deviation_gain<G: Game + ?Sized>(
    game: &G,
    profile: &[G::Action],
    tol: f64,
) -> Result<f64> {
    game.check_profile(profile)?;
    let mut scratch = profile.to_vec();
    Ok((0..game.player_count())
        .map(|player| deviation_gain(game, &mut scratch, player, tol))
        .fold(0.0, f64::max))
}

pub fn is_nash_equilibrium<G: Game + ?Sized>(
    game: &G,
    profile: &[G::Action],
    tol: f64,
) -> Result<bool> {
    Ok(max_deviation_gain(game, profile, tol)? <= tol)
}
