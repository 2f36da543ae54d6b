//! Jammer power allocation solvers.
//!
//! | method   | what it does                                                   |
//! |----------|----------------------------------------------------------------|
//! | `epr`    | equal split of the budget                                       |
//! | `expert` | KKT water-filling: bisection on the budget's shadow price       |
//! | `game`   | pricing game: best-response dynamics inside a price search      |
//! | `grid`   | exhaustive search of the discretized budget simplex (N <= 3)    |
//! | `pga`    | projected gradient ascent on the budget simplex                 |
//!
//! `expert`, `game` and `pga` maximize the unclipped (concave) sum rate;
//! `grid` maximizes the clipped one. Every result reports both.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::secrecy::{PowerAllocation, SecrecyScenario};

mod equilibrium;
mod expert;
mod oracle;
mod pricing;

pub use equilibrium::{solve_game, GameConfig};
pub use expert::{solve_expert, DEFAULT_EXPERT_TOL};
pub use oracle::{project_simplex, solve_grid_oracle, solve_projected_gradient, MAX_GRID_CHANNELS};
pub use pricing::{price_best_response, PricingGame};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Epr,
    Expert,
    Game,
    Grid,
    Pga,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Epr,
        Method::Expert,
        Method::Game,
        Method::Grid,
        Method::Pga,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Method::Epr => "epr",
            Method::Expert => "expert",
            Method::Game => "game",
            Method::Grid => "grid",
            Method::Pga => "pga",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.label() == s)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "unknown method `{s}` (expected epr|expert|game|grid|pga)"
                ))
            })
    }
}

/// One outer iteration of an iterative solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub iteration: usize,
    /// Price probed in this iteration, for price-based solvers.
    pub price: Option<f64>,
    pub sum_rate_surrogate: f64,
    pub sum_rate_clipped: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult {
    pub method: Method,
    pub alloc: PowerAllocation,
    pub sum_rate_clipped: f64,
    pub sum_rate_surrogate: f64,
    pub converged: bool,
    pub rounds_used: usize,
    pub trajectory: Vec<TrajectoryPoint>,
    pub final_price: Option<f64>,
    /// No channel responds to jamming, so every allocation is optimal.
    pub degenerate: bool,
}

impl SolveResult {
    pub(crate) fn finish(
        scenario: &SecrecyScenario,
        method: Method,
        alloc: Vec<f64>,
        converged: bool,
        rounds_used: usize,
    ) -> Self {
        SolveResult {
            method,
            sum_rate_clipped: scenario.sum_rate_unchecked(&alloc, true),
            sum_rate_surrogate: scenario.sum_rate_unchecked(&alloc, false),
            alloc: PowerAllocation::new(alloc),
            converged,
            rounds_used,
            trajectory: Vec::new(),
            final_price: None,
            degenerate: false,
        }
    }
}

pub(crate) fn point(
    scenario: &SecrecyScenario,
    iteration: usize,
    price: Option<f64>,
    p: &[f64],
) -> TrajectoryPoint {
    TrajectoryPoint {
        iteration,
        price,
        sum_rate_surrogate: scenario.sum_rate_unchecked(p, false),
        sum_rate_clipped: scenario.sum_rate_unchecked(p, true),
    }
}

/// Equal power split: `p_i = P_total / N`.
pub fn solve_epr(scenario: &SecrecyScenario) -> SolveResult {
    let n = scenario.n_channels();
    let alloc = vec![scenario.p_total_w() / n as f64; n];
    SolveResult::finish(scenario, Method::Epr, alloc, true, 0)
}

pub(crate) fn degenerate(scenario: &SecrecyScenario, method: Method) -> SolveResult {
    SolveResult {
        method,
        degenerate: true,
        ..solve_epr(scenario)
    }
}

/// Per-method knobs for [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub game: GameConfig,
    /// Relative budget tolerance of the expert solver.
    pub expert_tol: f64,
    pub grid_resolution: usize,
    /// Gradient step as a fraction of the budget.
    pub pga_step_rel: f64,
    pub pga_iters: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            game: GameConfig::default(),
            expert_tol: DEFAULT_EXPERT_TOL,
            grid_resolution: 2000,
            pga_step_rel: 1e-3,
            pga_iters: 10_000,
        }
    }
}

pub fn solve(
    scenario: &SecrecyScenario,
    method: Method,
    opts: &SolverOptions,
) -> Result<SolveResult> {
    match method {
        Method::Epr => Ok(solve_epr(scenario)),
        Method::Expert => solve_expert(scenario, opts.expert_tol),
        Method::Game => solve_game(scenario, &opts.game),
        Method::Grid => solve_grid_oracle(scenario, opts.grid_resolution),
        Method::Pga => solve_projected_gradient(
            scenario,
            opts.pga_step_rel * scenario.p_total_w(),
            opts.pga_iters,
        ),
    }
}
