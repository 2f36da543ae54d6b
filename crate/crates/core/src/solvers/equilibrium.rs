use super::{degenerate, point, Method, PricingGame, SolveResult};
use crate::error::{Error, Result};
use crate::game::best_response_dynamics;
use crate::secrecy::SecrecyScenario;

#[derive(Debug, Clone, PartialEq)]
pub struct GameConfig {
    /// Budget tolerance relative to `P_total`.
    pub budget_tol: f64,
    /// L-infinity stopping tolerance of a best-response round, relative to `P_total`.
    pub br_tol: f64,
    /// The outer loop also waits until the recorded sum rate moves by at
    /// most this much (bits/s/Hz) between consecutive iterations.
    pub plateau_tol: f64,
    pub max_outer: usize,
    pub max_br_rounds: usize,
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig {
            budget_tol: 1e-9,
            br_tol: 1e-12,
            plateau_tol: 1e-9,
            max_outer: 200,
            max_br_rounds: 100,
        }
    }
}

/// Solves the budgeted allocation as a pricing game.
///
/// Every channel is a player of a [`PricingGame`]. For a fixed price the
/// inner loop runs round-robin best-response dynamics to a Nash equilibrium;
/// the outer loop searches the price until the equilibrium demand clears the
/// budget. The first probe is the smallest marginal rate at full budget, at
/// which some channel alone demands `P_total`. Afterwards the bracket between
/// an over-demanding price and an affordable one is halved geometrically.
/// The search ends once the affordable equilibrium uses the budget to within
/// `budget_tol` and the sum rate has stopped moving (`plateau_tol`).
///
/// The trajectory records, per outer iteration, the best affordable
/// equilibrium found so far. Raising the affordable price never happens, so
/// every channel's power and the sum rate are nondecreasing along it.
pub fn solve_game(scenario: &SecrecyScenario, config: &GameConfig) -> Result<SolveResult> {
    if !(config.budget_tol > 0.0 && config.br_tol > 0.0) {
        return Err(Error::invalid("game tolerances must be positive"));
    }
    let channels = scenario.channels();
    let link = scenario.link();
    let p_total = scenario.p_total_w();
    if !channels.iter().any(|g| g.is_effective()) {
        return Ok(degenerate(scenario, Method::Game));
    }
    let budget_slack = config.budget_tol * p_total;
    let br_tol = config.br_tol * p_total;

    let effective = || channels.iter().filter(|g| g.is_effective());
    let mut hi = effective()
        .map(|g| link.marginal_rate(g, 0.0))
        .fold(0.0, f64::max);
    let mut lo: Option<f64> = None;
    let first_probe = effective()
        .map(|g| link.marginal_rate(g, p_total))
        .fold(f64::INFINITY, f64::min);

    let mut affordable = vec![0.0; channels.len()];
    let mut profile = affordable.clone();
    let mut trajectory = Vec::new();
    let mut inner_ok = true;
    let mut met = false;
    let mut outer = 0;

    while outer < config.max_outer {
        let price = match (outer, lo) {
            (0, _) => first_probe,
            (_, Some(lo)) => (lo * hi).sqrt(),
            (_, None) => 0.5 * hi,
        };
        if lo.is_some_and(|lo| price <= lo) || price >= hi {
            break;
        }
        outer += 1;

        let game = PricingGame::new(scenario, price)?;
        let dynamics = best_response_dynamics(&game, &profile, config.max_br_rounds, br_tol)?;
        inner_ok = dynamics.converged;
        profile = dynamics.final_profile().to_vec();

        let demand: f64 = profile.iter().sum();
        if demand <= p_total {
            hi = price;
            affordable.clone_from(&profile);
            met = p_total - demand <= budget_slack;
        } else {
            lo = Some(price);
        }
        trajectory.push(point(scenario, outer, Some(price), &affordable));
        let settled = match trajectory.as_slice() {
            [.., a, b] => (b.sum_rate_surrogate - a.sum_rate_surrogate).abs() <= config.plateau_tol,
            _ => true,
        };
        if met && settled {
            break;
        }
    }

    let mut result =
        SolveResult::finish(scenario, Method::Game, affordable, met && inner_ok, outer);
    result.trajectory = trajectory;
    result.final_price = Some(hi);
    Ok(result)
}
