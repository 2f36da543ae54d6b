use std::fmt;

use super::Game;
use crate::error::{Error, Result};

/// Maps a real action profile to one payoff per player.
pub type PayoffOracle = Box<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A game whose players each choose a real number from a closed interval.
pub struct ContinuousGame {
    intervals: Vec<(f64, f64)>,
    payoff: PayoffOracle,
}

impl fmt::Debug for ContinuousGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuousGame")
            .field("intervals", &self.intervals)
            .finish_non_exhaustive()
    }
}

impl ContinuousGame {
    /// `payoff` must be deterministic and return one entry per player.
    pub fn new<F>(intervals: Vec<(f64, f64)>, payoff: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        if intervals.is_empty() {
            return Err(Error::invalid("a game needs at least one player"));
        }
        for (player, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::invalid(format!(
                    "player {player} has invalid strategy interval [{lo}, {hi}]"
                )));
            }
        }
        Ok(ContinuousGame {
            intervals,
            payoff: Box::new(payoff),
        })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn payoff_vector(&self, profile: &[f64]) -> Vec<f64> {
        let v = (self.payoff)(profile);
        assert_eq!(
            v.len(),
            self.intervals.len(),
            "payoff oracle must return one payoff per player"
        );
        v
    }
}

impl Game for ContinuousGame {
    type Action = f64;

    fn player_count(&self) -> usize {
        self.intervals.len()
    }

    fn check_profile(&self, profile: &[f64]) -> Result<()> {
        if profile.len() != self.intervals.len() {
            return Err(Error::invalid(format!(
                "profile has {} actions, game has {} players",
                profile.len(),
                self.intervals.len()
            )));
        }
        for (player, (&x, &(lo, hi))) in profile.iter().zip(&self.intervals).enumerate() {
            if !(lo..=hi).contains(&x) {
                return Err(Error::invalid(format!(
                    "player {player} action {x} outside [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }

    fn payoff(&self, profile: &[f64], player: usize) -> f64 {
        self.payoff_vector(profile)[player]
    }

    fn best_response(&self, profile: &[f64], player: usize, tol: f64) -> f64 {
        let (lo, hi) = self.intervals[player];
        let mut probe = profile.to_vec();
        golden_section_max(
            |x| {
                probe[player] = x;
                self.payoff(&probe, player)
            },
            lo,
            hi,
            tol,
        )
    }

    fn action_change(&self, from: &f64, to: &f64) -> f64 {
        (from - to).abs()
    }
}

/// Golden-section search for the maximizer of a unimodal `f` on `[lo, hi]`,
/// shrinking the bracket until its width is below `tol`. The endpoints are
/// compared against the final midpoint so monotone functions return the
/// boundary exactly.
pub fn golden_section_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let tol = tol.max(f64::EPSILON * hi.abs().max(lo.abs()).max(1.0));

    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }

    let mid = 0.5 * (a + b);
    let mut best = (mid, f(mid));
    for x in [lo, hi] {
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{best_response, eval_payoff, max_deviation_gain};

    fn quadratic() -> ContinuousGame {
        ContinuousGame::new(vec![(0.0, 1.0)], |x| vec![-(x[0] - 0.3).powi(2)]).unwrap()
    }

    #[test]
    fn quadratic_vertex() {
        let g = quadratic();
        let x = best_response(&g, &[0.9], 0, 1e-9).unwrap();
        assert!((x - 0.3).abs() <= 1e-9, "{x}");
    }

    #[test]
    fn monotone_payoff_hits_boundary() {
        let g = ContinuousGame::new(vec![(-2.0, 5.0)], |x| vec![x[0]]).unwrap();
        assert_eq!(best_response(&g, &[0.0], 0, 1e-6).unwrap(), 5.0);
        let g = ContinuousGame::new(vec![(-2.0, 5.0)], |x| vec![-x[0]]).unwrap();
        assert_eq!(best_response(&g, &[0.0], 0, 1e-6).unwrap(), -2.0);
    }

    #[test]
    fn degenerate_interval() {
        let g = ContinuousGame::new(vec![(0.5, 0.5)], |x| vec![x[0]]).unwrap();
        assert_eq!(best_response(&g, &[0.5], 0, 1e-9).unwrap(), 0.5);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ContinuousGame::new(vec![(1.0, 0.0)], |_| vec![0.0]).is_err());
        assert!(ContinuousGame::new(vec![(0.0, f64::NAN)], |_| vec![0.0]).is_err());
        let g = quadratic();
        assert!(eval_payoff(&g, &[1.5], 0).is_err());
        assert!(eval_payoff(&g, &[0.5, 0.5], 0).is_err());
        assert!(eval_payoff(&g, &[0.5], 1).is_err());
    }

    #[test]
    fn deviation_gain_of_quadratic() {
        let g = quadratic();
        let gain = max_deviation_gain(&g, &[0.8], 1e-10).unwrap();
        assert!((gain - 0.25).abs() < 1e-12);
        assert!(max_deviation_gain(&g, &[0.3], 1e-10).unwrap() <= 1e-10);
    }
}
