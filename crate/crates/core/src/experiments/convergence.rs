use crate::error::Result;
use crate::secrecy::SecrecyScenario;
use crate::solvers::{solve_game, GameConfig};

/// Clipped sum secrecy rate after each outer iteration of the game solver.
pub fn run_convergence(
    scenario: &SecrecyScenario,
    config: &GameConfig,
) -> Result<Vec<(usize, f64)>> {
    let result = solve_game(scenario, config)?;
    if result.trajectory.is_empty() {
        // degenerate scenario: nothing to iterate
        return Ok(vec![(0, result.sum_rate_clipped)]);
    }
    Ok(result
        .trajectory
        .iter()
        .map(|t| (t.iteration, t.sum_rate_clipped))
        .collect())
}

/// First iteration from which every later value stays within `tol` of the
/// final one.
pub fn plateau_iteration(series: &[(usize, f64)], tol: f64) -> Option<usize> {
    let &(_, last) = series.last()?;
    let mut plateau = series.len() - 1;
    while plateau > 0 && (series[plateau - 1].1 - last).abs() <= tol {
        plateau -= 1;
    }
    Some(series[plateau].0)
}
