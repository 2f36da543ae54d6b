use super::{ActionProfile, Game};
use crate::error::{Error, Result};

/// Default cap on the number of profiles [`enumerate_pure_nash`] will visit.
pub const DEFAULT_PROFILE_CAP: u128 = 1_000_000;

/// A finite game with an explicit payoff tensor.
///
/// Profiles are stored row-major with the last player's strategy varying
/// fastest; each entry holds one payoff per player.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGame {
    strategy_counts: Vec<usize>,
    payoffs: Vec<f64>,
}

impl FiniteGame {
    /// Builds a game by evaluating `payoff_fn` on every profile.
    pub fn from_fn<F>(strategy_counts: Vec<usize>, mut payoff_fn: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Vec<f64>,
    {
        if strategy_counts.is_empty() {
            return Err(Error::invalid("a game needs at least one player"));
        }
        if let Some(player) = strategy_counts.iter().position(|&c| c == 0) {
            return Err(Error::invalid(format!("player {player} has no strategies")));
        }
        let players = strategy_counts.len();
        let profile_count = strategy_counts
            .iter()
            .try_fold(1usize, |acc, &c| acc.checked_mul(c))
            .and_then(|n| n.checked_mul(players).map(|_| n))
            .ok_or_else(|| Error::invalid("payoff tensor size overflows"))?;

        let mut payoffs = Vec::with_capacity(profile_count * players);
        for profile in Profiles::new(&strategy_counts) {
            let v = payoff_fn(&profile);
            if v.len() != players {
                return Err(Error::invalid(format!(
                    "payoff vector at {profile:?} has {} entries, expected {players}",
                    v.len()
                )));
            }
            payoffs.extend(v);
        }
        Ok(FiniteGame {
            strategy_counts,
            payoffs,
        })
    }

    /// Two-player game from a row-player and a column-player payoff matrix.
    pub fn bimatrix(row: &[Vec<f64>], col: &[Vec<f64>]) -> Result<Self> {
        let rows = row.len();
        let cols = row.first().map_or(0, Vec::len);
        let rectangular = |m: &[Vec<f64>]| m.len() == rows && m.iter().all(|r| r.len() == cols);
        if !rectangular(row) || !rectangular(col) {
            return Err(Error::invalid(
                "bimatrix payoffs must be rectangular and of equal shape",
            ));
        }
        FiniteGame::from_fn(vec![rows, cols], |p| vec![row[p[0]][p[1]], col[p[0]][p[1]]])
    }

    pub fn strategy_counts(&self) -> &[usize] {
        &self.strategy_counts
    }

    pub fn profile_count(&self) -> usize {
        self.payoffs.len() / self.strategy_counts.len()
    }

    fn offset(&self, profile: &[usize]) -> usize {
        let flat = profile
            .iter()
            .zip(&self.strategy_counts)
            .fold(0, |acc, (&a, &c)| acc * c + a);
        flat * self.strategy_counts.len()
    }

    /// The full payoff vector at a (validated) profile.
    pub fn payoff_vector(&self, profile: &[usize]) -> &[f64] {
        let start = self.offset(profile);
        &self.payoffs[start..start + self.strategy_counts.len()]
    }

    /// All profiles in lexicographic order.
    pub fn profiles(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        Profiles::new(&self.strategy_counts)
    }
}

impl Game for FiniteGame {
    type Action = usize;

    fn player_count(&self) -> usize {
        self.strategy_counts.len()
    }

    fn check_profile(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.strategy_counts.len() {
            return Err(Error::invalid(format!(
                "profile has {} actions, game has {} players",
                profile.len(),
                self.strategy_counts.len()
            )));
        }
        for (player, (&a, &c)) in profile.iter().zip(&self.strategy_counts).enumerate() {
            if a >= c {
                return Err(Error::invalid(format!(
                    "player {player} plays strategy {a} but has only {c}"
                )));
            }
        }
        Ok(())
    }

    fn payoff(&self, profile: &[usize], player: usize) -> f64 {
        self.payoff_vector(profile)[player]
    }

    fn best_response(&self, profile: &[usize], player: usize, _tol: f64) -> usize {
        let mut probe = profile.to_vec();
        let mut best = 0;
        let mut best_value = f64::NEG_INFINITY;
        for s in 0..self.strategy_counts[player] {
            probe[player] = s;
            let v = self.payoff(&probe, player);
            if v > best_value {
                best = s;
                best_value = v;
            }
        }
        best
    }

    fn action_change(&self, from: &usize, to: &usize) -> f64 {
        if from == to {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

struct Profiles<'a> {
    counts: &'a [usize],
    next: Option<Vec<usize>>,
}

impl<'a> Profiles<'a> {
    fn new(counts: &'a [usize]) -> Self {
        let next =
            (!counts.is_empty() && counts.iter().all(|&c| c > 0)).then(|| vec![0; counts.len()]);
        Profiles { counts, next }
    }
}

impl Iterator for Profiles<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.counts[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// All pure Nash equilibria, in lexicographic order.
///
/// Uses [`DEFAULT_PROFILE_CAP`]; see [`enumerate_pure_nash_with_cap`].
pub fn enumerate_pure_nash(game: &FiniteGame) -> Result<Vec<ActionProfile<usize>>> {
    enumerate_pure_nash_with_cap(game, DEFAULT_PROFILE_CAP)
}

/// Exhaustively checks every profile against every unilateral deviation.
/// Fails with a resource-limit error when the profile count exceeds `cap`.
pub fn enumerate_pure_nash_with_cap(
    game: &FiniteGame,
    cap: u128,
) -> Result<Vec<ActionProfile<usize>>> {
    let size: u128 = game.strategy_counts.iter().map(|&c| c as u128).product();
    if size > cap {
        return Err(Error::ResourceLimit {
            what: "pure Nash enumeration profiles",
            size,
            limit: cap,
        });
    }
    let players = game.player_count();
    let mut out = Vec::new();
    for profile in game.profiles() {
        let stable = (0..players).all(|i| {
            let br = game.best_response(&profile, i, 0.0);
            let mut dev = profile.clone();
            dev[i] = br;
            game.payoff(&dev, i) <= game.payoff(&profile, i)
        });
        if stable {
            out.push(ActionProfile(profile));
        }
    }
    Ok(out)
}
