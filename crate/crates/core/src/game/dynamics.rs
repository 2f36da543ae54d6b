use super::{deviation_gain, ActionProfile, Game};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct BrDynamicsResult<A> {
    /// `trajectory[0]` is the initial profile, `trajectory[k]` the profile
    /// after round `k`.
    pub trajectory: Vec<ActionProfile<A>>,
    pub converged: bool,
    pub rounds_used: usize,
    pub final_max_deviation_gain: f64,
}

impl<A> BrDynamicsResult<A> {
    pub fn final_profile(&self) -> &ActionProfile<A> {
        self.trajectory
            .last()
            .expect("trajectory holds at least the initial profile")
    }
}

/// Round-robin best-response dynamics.
///
/// Each round, players in ascending index order switch to a best response
/// against the current actions of everyone else, so a fixed point is a pure
/// Nash equilibrium. The run stops after the first round in which no action
/// moves by more than `tol` (and no player can gain more than `tol`), or after
/// `max_rounds`.
pub fn best_response_dynamics<G: Game + ?Sized>(
    game: &G,
    init: &[G::Action],
    max_rounds: usize,
    tol: f64,
) -> Result<BrDynamicsResult<G::Action>> {
    game.check_profile(init)?;
    let players = game.player_count();
    let mut profile = init.to_vec();
    let mut trajectory = vec![ActionProfile(profile.clone())];
    let mut converged = false;
    let mut rounds_used = 0;

    while rounds_used < max_rounds {
        rounds_used += 1;
        let mut moved = 0.0f64;
        for player in 0..players {
            let br = game.best_response(&profile, player, tol);
            moved = moved.max(game.action_change(&profile[player], &br));
            profile[player] = br;
        }
        trajectory.push(ActionProfile(profile.clone()));
        if moved <= tol {
            converged = true;
            break;
        }
    }

    let final_max_deviation_gain = (0..players)
        .map(|player| deviation_gain(game, &mut profile, player, tol))
        .fold(0.0, f64::max);
    Ok(BrDynamicsResult {
        trajectory,
        converged: converged && final_max_deviation_gain <= tol,
        rounds_used,
        final_max_deviation_gain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::classic::*;
    use crate::game::ContinuousGame;

    #[test]
    fn prisoners_dilemma_reaches_defection() {
        let r =
            best_response_dynamics(&prisoners_dilemma(), &[COOPERATE, COOPERATE], 10, 0.0).unwrap();
        assert!(r.converged);
        assert!(r.rounds_used <= 2);
        assert_eq!(r.final_profile().0, vec![DEFECT, DEFECT]);
        assert_eq!(r.final_max_deviation_gain, 0.0);
    }

    #[test]
    fn matching_pennies_cycles() {
        let r = best_response_dynamics(&matching_pennies(), &[HEADS, HEADS], 25, 0.0).unwrap();
        assert!(!r.converged);
        assert_eq!(r.rounds_used, 25);
        assert_eq!(r.trajectory.len(), 26);
        assert_eq!(r.final_max_deviation_gain, 2.0);
        // period-2 cycle after the first round
        assert_eq!(r.trajectory[1], r.trajectory[3]);
        assert_ne!(r.trajectory[1], r.trajectory[2]);
    }

    #[test]
    fn zero_rounds_returns_init() {
        let r = best_response_dynamics(&prisoners_dilemma(), &[0, 1], 0, 0.0).unwrap();
        assert!(!r.converged);
        assert_eq!(r.trajectory.len(), 1);
    }

    #[test]
    fn continuous_cournot_duopoly() {
        // inverse demand 1 - q1 - q2, zero cost: equilibrium q = 1/3 each
        let g = ContinuousGame::new(vec![(0.0, 1.0), (0.0, 1.0)], |q| {
            let price = (1.0 - q[0] - q[1]).max(0.0);
            vec![price * q[0], price * q[1]]
        })
        .unwrap();
        // derivative-free search resolves a smooth maximizer to ~sqrt(eps)
        let r = best_response_dynamics(&g, &[0.0, 0.0], 200, 1e-7).unwrap();
        assert!(r.converged);
        let q = r.final_profile();
        assert!(
            (q[0] - 1.0 / 3.0).abs() < 1e-6 && (q[1] - 1.0 / 3.0).abs() < 1e-6,
            "{q:?}"
        );
    }
}
