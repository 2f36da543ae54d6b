use super::{degenerate, price_best_response, Method, SolveResult};
use crate::error::{Error, Result};
use crate::secrecy::SecrecyScenario;

pub const DEFAULT_EXPERT_TOL: f64 = 1e-9;

const MAX_BISECTIONS: usize = 200;
const MAX_BRACKET_STEPS: usize = 2000;

/// KKT water-filling for the budgeted sum secrecy rate.
///
/// Each channel's demand at shadow price `lambda` is its closed-form
/// priced best response; total demand is continuous and nonincreasing in
/// `lambda`, so bisection on `lambda` finds the market-clearing price. The
/// upper end starts at the largest marginal rate at zero power (demand 0), the
/// lower end is halved until demand covers the budget. Stops once the
/// allocation at the upper end uses the budget to within `tol * P_total`,
/// then scales that allocation up to spend the budget exactly.
///
/// The objective is concave, so the clearing allocation is the global
/// optimum of the unclipped sum rate.
pub fn solve_expert(scenario: &SecrecyScenario, tol: f64) -> Result<SolveResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let channels = scenario.channels();
    let link = scenario.link();
    let p_total = scenario.p_total_w();
    if !channels.iter().any(|g| g.is_effective()) {
        return Ok(degenerate(scenario, Method::Expert));
    }

    let allocate = |lambda: f64| -> Vec<f64> {
        channels
            .iter()
            .map(|g| price_best_response(g, &link, lambda).expect("lambda stays positive"))
            .collect()
    };
    let demand = |p: &[f64]| p.iter().sum::<f64>();

    let mut hi = channels
        .iter()
        .map(|g| link.marginal_rate(g, 0.0))
        .fold(0.0, f64::max);
    let mut best = vec![0.0; channels.len()];
    let mut lo = hi;
    let mut steps = 0;
    loop {
        lo *= 0.5;
        steps += 1;
        let p = allocate(lo);
        if demand(&p) >= p_total {
            break;
        }
        hi = lo;
        best = p;
        if steps >= MAX_BRACKET_STEPS {
            return Err(Error::invalid("could not bracket the clearing price"));
        }
    }

    let mut met = p_total - demand(&best) <= tol * p_total;
    for _ in 0..MAX_BISECTIONS {
        if met {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        steps += 1;
        let p = allocate(mid);
        if demand(&p) <= p_total {
            hi = mid;
            best = p;
            met = p_total - demand(&best) <= tol * p_total;
        } else {
            lo = mid;
        }
    }

    // Spend the residual budget: every active channel's marginal rate is
    // within the bracket of the clearing price, so a proportional top-up is
    // first-order optimal.
    let used = demand(&best);
    if met && used > 0.0 {
        let scale = p_total / used;
        best.iter_mut().for_each(|p| *p *= scale);
    }

    let mut result = SolveResult::finish(scenario, Method::Expert, best, met, steps);
    result.final_price = Some(hi);
    Ok(result)
}
