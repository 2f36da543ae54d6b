//! Per-channel secrecy rates under friendly jamming.
//!
//! Channel `i` carries a legitimate UAV user transmitting at `P_s` to the base
//! station with gain `g_s`; the eavesdropper overhears it with gain `g_e`. The
//! jammer spends `p_i` on the channel and reaches the eavesdropper with gain
//! `g_j`, raising the eavesdropper's noise floor only:
//!
//! ```text
//! phi_i(p_i) = log2(1 + P_s g_s / s2) - log2(1 + P_s g_e / (s2 + p_i g_j))
//! ```
//!
//! `phi_i` is nondecreasing and concave in `p_i`. Reported metrics use the
//! clipped rate `max(0, phi_i)`; solvers optimize the unclipped sum.

use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on the jammer budget when checking an allocation.
pub const BUDGET_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGains {
    /// Legitimate user to base station.
    pub g_s: f64,
    /// Legitimate user to eavesdropper.
    pub g_e: f64,
    /// Jammer to eavesdropper.
    pub g_j: f64,
}

impl ChannelGains {
    pub fn new(g_s: f64, g_e: f64, g_j: f64) -> Self {
        ChannelGains { g_s, g_e, g_j }
    }

    /// Whether jamming power on this channel changes its secrecy rate at all.
    pub fn is_effective(&self) -> bool {
        self.g_e > 0.0 && self.g_j > 0.0
    }
}

/// Powers and noise shared by every channel, in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkParams {
    pub p_s_w: f64,
    pub sigma2_w: f64,
}

impl LinkParams {
    /// Unclipped secrecy rate of one channel at jamming power `p`.
    pub fn rate(&self, gains: &ChannelGains, p: f64) -> f64 {
        let legit = (self.p_s_w * gains.g_s / self.sigma2_w).ln_1p();
        let eave = (self.p_s_w * gains.g_e / (self.sigma2_w + p * gains.g_j)).ln_1p();
        (legit - eave) / LN_2
    }

    /// `d phi / d p` at jamming power `p`.
    pub fn marginal_rate(&self, gains: &ChannelGains, p: f64) -> f64 {
        let c = gains.g_j;
        let leak = self.p_s_w * gains.g_e;
        if c == 0.0 || leak == 0.0 {
            return 0.0;
        }
        let a = self.sigma2_w + p * c;
        // c/ln2 * [1/a - 1/(a + leak)], written without cancellation
        c * leak / (a * (a + leak) * LN_2)
    }
}

/// A static jamming scenario: `N` orthogonal channels and the jammer budget.
#[derive(Debug, Clone, PartialEq)]
pub struct SecrecyScenario {
    channels: Vec<ChannelGains>,
    p_total_w: f64,
    link: LinkParams,
}

impl SecrecyScenario {
    pub fn new(
        channels: Vec<ChannelGains>,
        p_total_w: f64,
        p_s_w: f64,
        sigma2_w: f64,
    ) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::invalid("scenario needs at least one channel"));
        }
        for (name, v) in [
            ("p_total_w", p_total_w),
            ("p_s_w", p_s_w),
            ("sigma2_w", sigma2_w),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        for (i, g) in channels.iter().enumerate() {
            if ![g.g_s, g.g_e, g.g_j]
                .iter()
                .all(|x| x.is_finite() && *x >= 0.0)
            {
                return Err(Error::invalid(format!(
                    "channel {i} has a negative or non-finite gain: {g:?}"
                )));
            }
        }
        Ok(SecrecyScenario {
            channels,
            p_total_w,
            link: LinkParams { p_s_w, sigma2_w },
        })
    }

    pub fn n_channels(&self) -> usize {
        self.channels.len()
    }

    pub fn channels(&self) -> &[ChannelGains] {
        &self.channels
    }

    pub fn p_total_w(&self) -> f64 {
        self.p_total_w
    }

    pub fn p_s_w(&self) -> f64 {
        self.link.p_s_w
    }

    pub fn sigma2_w(&self) -> f64 {
        self.link.sigma2_w
    }

    pub fn link(&self) -> LinkParams {
        self.link
    }

    fn channel(&self, channel: usize) -> Result<&ChannelGains> {
        self.channels.get(channel).ok_or_else(|| {
            Error::invalid(format!(
                "channel {channel} out of range for {} channels",
                self.channels.len()
            ))
        })
    }

    /// Secrecy rate of one channel in bits/s/Hz, optionally clipped at zero.
    pub fn channel_secrecy_rate(&self, channel: usize, p_i: f64, clipped: bool) -> Result<f64> {
        let gains = self.channel(channel)?;
        if !p_i.is_finite() || p_i < 0.0 {
            return Err(Error::invalid(format!(
                "jamming power must be finite and >= 0, got {p_i}"
            )));
        }
        let r = self.link.rate(gains, p_i);
        Ok(if clipped { r.max(0.0) } else { r })
    }

    /// System sum secrecy rate in bits/s/Hz.
    pub fn sum_secrecy_rate(&self, alloc: &PowerAllocation, clipped: bool) -> Result<f64> {
        alloc.check(self)?;
        Ok(self.sum_rate_unchecked(alloc.powers(), clipped))
    }

    pub(crate) fn sum_rate_unchecked(&self, p: &[f64], clipped: bool) -> f64 {
        self.channels
            .iter()
            .zip(p)
            .map(|(g, &p)| {
                let r = self.link.rate(g, p);
                if clipped {
                    r.max(0.0)
                } else {
                    r
                }
            })
            .sum()
    }

    /// Gradient of the unclipped sum rate; every component is `>= 0`.
    pub fn secrecy_rate_gradient(&self, alloc: &PowerAllocation) -> Result<Vec<f64>> {
        alloc.check(self)?;
        Ok(self.gradient_unchecked(alloc.powers()))
    }

    pub(crate) fn gradient_unchecked(&self, p: &[f64]) -> Vec<f64> {
        self.channels
            .iter()
            .zip(p)
            .map(|(g, &p)| self.link.marginal_rate(g, p))
            .collect()
    }
}

/// Jamming power per channel, in watts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerAllocation(Vec<f64>);

impl PowerAllocation {
    pub fn new(p: Vec<f64>) -> Self {
        PowerAllocation(p)
    }

    pub fn zeros(n: usize) -> Self {
        PowerAllocation(vec![0.0; n])
    }

    pub fn powers(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Checks length, nonnegativity, and the budget (with [`BUDGET_SLACK`]).
    pub fn check(&self, scenario: &SecrecyScenario) -> Result<()> {
        if self.0.len() != scenario.n_channels() {
            return Err(Error::invalid(format!(
                "allocation has {} entries, scenario has {} channels",
                self.0.len(),
                scenario.n_channels()
            )));
        }
        if let Some(i) = self.0.iter().position(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::invalid(format!(
                "allocation entry {i} is {}",
                self.0[i]
            )));
        }
        let total = self.total();
        if total > scenario.p_total_w() * (1.0 + BUDGET_SLACK) {
            return Err(Error::invalid(format!(
                "allocation uses {total} W, budget is {} W",
                scenario.p_total_w()
            )));
        }
        Ok(())
    }
}
