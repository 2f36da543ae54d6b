use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::game::Game;
use crate::secrecy::{ChannelGains, LinkParams, SecrecyScenario};

/// Maximizer over `p >= 0` of `phi(p) - price * p` for a single channel.
///
/// With `A = s2`, `B = s2 + P_s g_e` and `c = g_j`, the first-order condition
/// is `(A + c p)(B + c p) = c (B - A) / (price ln 2)`; the positive root is
/// returned, or zero when the marginal rate at the origin is already below
/// the price.
pub fn price_best_response(gains: &ChannelGains, link: &LinkParams, price: f64) -> Result<f64> {
    if !price.is_finite() || price <= 0.0 {
        return Err(Error::invalid(format!(
            "price must be positive and finite, got {price}"
        )));
    }
    if !gains.is_effective() {
        return Ok(0.0);
    }
    let c = gains.g_j;
    let a = link.sigma2_w;
    let leak = link.p_s_w * gains.g_e;
    let b = a + leak;
    let rhs = c * leak / (price * LN_2);
    let excess = rhs - a * b;
    if excess <= 0.0 {
        return Ok(0.0);
    }
    // positive root of x^2 + (A+B)x + (AB - rhs) = 0, in cancellation-free form
    let x = 2.0 * excess / ((a + b) + (leak * leak + 4.0 * rhs).sqrt());
    Ok(x / c)
}

/// Channels as players: each picks its jamming power in `[0, P_total]` and
/// earns its own secrecy rate minus `price` per watt.
///
/// Payoffs are separable in each player's own action, so the sum of payoffs
/// is an exact potential and best-response rounds never decrease it.
#[derive(Debug, Clone, Copy)]
pub struct PricingGame<'a> {
    scenario: &'a SecrecyScenario,
    price: f64,
}

impl<'a> PricingGame<'a> {
    pub fn new(scenario: &'a SecrecyScenario, price: f64) -> Result<Self> {
        if !price.is_finite() || price < 0.0 {
            return Err(Error::invalid(format!(
                "price must be finite and >= 0, got {price}"
            )));
        }
        Ok(PricingGame { scenario, price })
    }

    pub fn price(&self) -> f64 {
        self.price
    }

    pub fn scenario(&self) -> &SecrecyScenario {
        self.scenario
    }
}

impl Game for PricingGame<'_> {
    type Action = f64;

    fn player_count(&self) -> usize {
        self.scenario.n_channels()
    }

    fn check_profile(&self, profile: &[f64]) -> Result<()> {
        if profile.len() != self.scenario.n_channels() {
            return Err(Error::invalid(format!(
                "profile has {} actions, scenario has {} channels",
                profile.len(),
                self.scenario.n_channels()
            )));
        }
        let cap = self.scenario.p_total_w();
        if let Some(i) = profile.iter().position(|p| !(0.0..=cap).contains(p)) {
            return Err(Error::invalid(format!(
                "channel {i} power {} outside [0, {cap}]",
                profile[i]
            )));
        }
        Ok(())
    }

    fn payoff(&self, profile: &[f64], player: usize) -> f64 {
        let p = profile[player];
        self.scenario
            .link()
            .rate(&self.scenario.channels()[player], p)
            - self.price * p
    }

    fn best_response(&self, _profile: &[f64], player: usize, _tol: f64) -> f64 {
        let gains = &self.scenario.channels()[player];
        let cap = self.scenario.p_total_w();
        if self.price == 0.0 {
            return if gains.is_effective() { cap } else { 0.0 };
        }
        price_best_response(gains, &self.scenario.link(), self.price)
            .expect("price validated at construction")
            .min(cap)
    }

    fn action_change(&self, from: &f64, to: &f64) -> f64 {
        (from - to).abs()
    }
}
