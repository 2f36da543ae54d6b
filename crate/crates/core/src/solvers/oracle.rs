//! Validation oracles: exhaustive grid search and projected gradient ascent.

use super::{point, solve_epr, Method, SolveResult};
use crate::error::{Error, Result};
use crate::secrecy::SecrecyScenario;

/// Largest channel count [`solve_grid_oracle`] accepts.
pub const MAX_GRID_CHANNELS: usize = 3;

/// Exhaustive search of `{p >= 0, sum p = P_total}` on a lattice of step
/// `P_total / resolution`, maximizing the clipped sum rate. Ties keep the
/// lexicographically first lattice point.
pub fn solve_grid_oracle(scenario: &SecrecyScenario, resolution: usize) -> Result<SolveResult> {
    let n = scenario.n_channels();
    if n > MAX_GRID_CHANNELS {
        return Err(Error::ResourceLimit {
            what: "grid oracle channels",
            size: n as u128,
            limit: MAX_GRID_CHANNELS as u128,
        });
    }
    if resolution == 0 {
        return Err(Error::invalid("grid resolution must be at least 1"));
    }
    let step = scenario.p_total_w() / resolution as f64;
    let link = scenario.link();
    // tables[i][k] = clipped rate of channel i at power k * step
    let tables: Vec<Vec<f64>> = scenario
        .channels()
        .iter()
        .map(|g| {
            (0..=resolution)
                .map(|k| link.rate(g, k as f64 * step).max(0.0))
                .collect()
        })
        .collect();

    let mut best_k = vec![0usize; n];
    let mut best_v = f64::NEG_INFINITY;
    let mut k = vec![0usize; n];
    search(
        &tables,
        resolution,
        0,
        0.0,
        &mut k,
        &mut best_k,
        &mut best_v,
    );

    let alloc = best_k.iter().map(|&k| k as f64 * step).collect();
    Ok(SolveResult::finish(scenario, Method::Grid, alloc, true, 0))
}

fn search(
    tables: &[Vec<f64>],
    remaining: usize,
    depth: usize,
    partial: f64,
    k: &mut Vec<usize>,
    best_k: &mut Vec<usize>,
    best_v: &mut f64,
) {
    if depth + 1 == tables.len() {
        k[depth] = remaining;
        let v = partial + tables[depth][remaining];
        if v > *best_v {
            *best_v = v;
            best_k.clone_from(k);
        }
        return;
    }
    for units in 0..=remaining {
        k[depth] = units;
        search(
            tables,
            remaining - units,
            depth + 1,
            partial + tables[depth][units],
            k,
            best_k,
            best_v,
        );
    }
}

/// Euclidean projection of `v` onto `{p >= 0, sum p = budget}` by sorting and
/// thresholding: `p_i = max(0, v_i - theta)`.
pub fn project_simplex(v: &[f64], budget: f64) -> Result<Vec<f64>> {
    if !budget.is_finite() || budget <= 0.0 {
        return Err(Error::invalid(format!(
            "budget must be positive and finite, got {budget}"
        )));
    }
    if v.is_empty() {
        return Err(Error::invalid("cannot project an empty vector"));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("cannot project a non-finite vector"));
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - budget) / (j + 1) as f64;
        if u - t > 0.0 {
            theta = t;
        }
    }
    Ok(v.iter().map(|&x| (x - theta).max(0.0)).collect())
}

/// Projected gradient ascent on the unclipped sum rate, starting from the
/// equal split.
///
/// Each iteration tries `p + step * grad` projected back onto the budget
/// simplex and halves the trial step until the objective does not decrease,
/// so iterates are monotone and the last one is the best. A fixed step
/// oscillates on channels whose optimal power sits in the high-curvature
/// region near zero.
pub fn solve_projected_gradient(
    scenario: &SecrecyScenario,
    step: f64,
    iters: usize,
) -> Result<SolveResult> {
    if !step.is_finite() || step <= 0.0 {
        return Err(Error::invalid(format!(
            "step must be positive and finite, got {step}"
        )));
    }
    const MAX_HALVINGS: usize = 60;
    let p_total = scenario.p_total_w();
    let objective = |p: &[f64]| scenario.sum_rate_unchecked(p, false);
    let mut p = solve_epr(scenario).alloc.into_inner();
    let mut value = objective(&p);
    let mut last_move = f64::INFINITY;
    let mut trajectory = Vec::new();
    let record_every = (iters / 100).max(1);
    let mut used = 0;

    'outer: for it in 1..=iters {
        used = it;
        let grad = scenario.gradient_unchecked(&p);
        let mut trial_step = step;
        let mut halvings = 0;
        let (next, next_value) = loop {
            let ascended: Vec<f64> = p
                .iter()
                .zip(&grad)
                .map(|(x, g)| x + trial_step * g)
                .collect();
            let trial = project_simplex(&ascended, p_total)?;
            let v = objective(&trial);
            if v >= value {
                break (trial, v);
            }
            halvings += 1;
            if halvings > MAX_HALVINGS {
                last_move = 0.0;
                break 'outer;
            }
            trial_step *= 0.5;
        };
        last_move = p
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        p = next;
        value = next_value;
        if it % record_every == 0 || it == iters {
            trajectory.push(point(scenario, it, None, &p));
        }
        if last_move == 0.0 {
            break;
        }
    }

    let mut result =
        SolveResult::finish(scenario, Method::Pga, p, last_move <= 1e-12 * p_total, used);
    result.trajectory = trajectory;
    Ok(result)
}
