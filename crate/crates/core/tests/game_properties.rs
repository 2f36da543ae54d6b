use proptest::prelude::*;

use secgame::game::{
    best_response, best_response_dynamics, enumerate_pure_nash, eval_payoff, golden_section_max,
    max_deviation_gain, ActionProfile, ContinuousGame, FiniteGame, Game,
};

/// Independent oracle: a profile is an equilibrium iff no single player has a
/// strictly better alternative strategy, checked by direct tensor lookups.
fn double_loop_nash(game: &FiniteGame) -> Vec<ActionProfile<usize>> {
    let counts = game.strategy_counts().to_vec();
    let mut out = Vec::new();
    for profile in game.profiles() {
        let here = game.payoff_vector(&profile).to_vec();
        let mut stable = true;
        'players: for (i, &count) in counts.iter().enumerate() {
            for s in 0..count {
                let mut dev = profile.clone();
                dev[i] = s;
                if game.payoff_vector(&dev)[i] > here[i] {
                    stable = false;
                    break 'players;
                }
            }
        }
        if stable {
            out.push(ActionProfile(profile));
        }
    }
    out
}

fn bimatrix_strategy(max: usize, int_payoffs: bool) -> impl Strategy<Value = FiniteGame> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        let cell = if int_payoffs {
            (0i32..4).prop_map(f64::from).boxed()
        } else {
            (-10.0f64..10.0).boxed()
        };
        proptest::collection::vec(cell, 2 * r * c).prop_map(move |v| {
            FiniteGame::from_fn(vec![r, c], |p| {
                let k = 2 * (p[0] * c + p[1]);
                vec![v[k], v[k + 1]]
            })
            .unwrap()
        })
    })
}

fn three_player_strategy() -> impl Strategy<Value = FiniteGame> {
    proptest::collection::vec((0i32..5).prop_map(f64::from), 3 * 2 * 3 * 2).prop_map(|v| {
        FiniteGame::from_fn(vec![2, 3, 2], |p| {
            let k = 3 * ((p[0] * 3 + p[1]) * 2 + p[2]);
            v[k..k + 3].to_vec()
        })
        .unwrap()
    })
}

proptest! {
    #[test]
    fn payoff_is_tensor_lookup(v in proptest::collection::vec(-5.0f64..5.0, 18)) {
        let g = FiniteGame::from_fn(vec![3, 3], |p| {
            let k = 2 * (p[0] * 3 + p[1]);
            vec![v[k], v[k + 1]]
        }).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                prop_assert_eq!(eval_payoff(&g, &[a, b], 0).unwrap(), v[2 * (a * 3 + b)]);
                prop_assert_eq!(eval_payoff(&g, &[a, b], 1).unwrap(), v[2 * (a * 3 + b) + 1]);
            }
        }
    }

    #[test]
    fn deviation_gain_nonnegative(g in bimatrix_strategy(4, false)) {
        for p in g.profiles() {
            prop_assert!(max_deviation_gain(&g, &p, 0.0).unwrap() >= 0.0);
        }
    }

    #[test]
    fn enumeration_matches_double_loop(g in bimatrix_strategy(4, true)) {
        prop_assert_eq!(enumerate_pure_nash(&g).unwrap(), double_loop_nash(&g));
    }

    #[test]
    fn enumeration_matches_double_loop_three_players(g in three_player_strategy()) {
        prop_assert_eq!(enumerate_pure_nash(&g).unwrap(), double_loop_nash(&g));
    }

    #[test]
    fn equilibria_have_zero_gain(g in bimatrix_strategy(4, false)) {
        let ne = enumerate_pure_nash(&g).unwrap();
        for p in g.profiles() {
            let is_ne = ne.iter().any(|q| q.0 == p);
            prop_assert_eq!(max_deviation_gain(&g, &p, 0.0).unwrap() == 0.0, is_ne);
        }
    }

    #[test]
    fn dynamics_fixed_points_are_equilibria(g in bimatrix_strategy(4, true), a in 0usize..4, b in 0usize..4) {
        let init = [a % g.strategy_counts()[0], b % g.strategy_counts()[1]];
        let r = best_response_dynamics(&g, &init, 50, 0.0).unwrap();
        prop_assert!(!r.trajectory.is_empty());
        if r.converged {
            prop_assert!(r.final_max_deviation_gain <= 0.0);
            prop_assert!(enumerate_pure_nash(&g).unwrap().contains(r.final_profile()));
        }
    }

    #[test]
    fn affine_transform_preserves_equilibria(
        g in bimatrix_strategy(4, false),
        scale in 0.01f64..100.0,
        shift in -50.0f64..50.0,
        player in 0usize..2,
    ) {
        let transformed = FiniteGame::from_fn(g.strategy_counts().to_vec(), |p| {
            let mut v = g.payoff_vector(p).to_vec();
            v[player] = scale * v[player] + shift;
            v
        }).unwrap();
        prop_assert_eq!(enumerate_pure_nash(&g).unwrap(), enumerate_pure_nash(&transformed).unwrap());
    }

    #[test]
    fn best_response_is_deterministic(g in bimatrix_strategy(4, true)) {
        for p in g.profiles() {
            for i in 0..2 {
                let first = best_response(&g, &p, i, 0.0).unwrap();
                prop_assert_eq!(best_response(&g, &p, i, 0.0).unwrap(), first);
                // lowest index among the maximizers
                let mut probe = p.clone();
                let values: Vec<f64> = (0..g.strategy_counts()[i]).map(|s| { probe[i] = s; g.payoff(&probe, i) }).collect();
                let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!(first, values.iter().position(|&v| v == max).unwrap());
            }
        }
    }

    #[test]
    fn unimodal_search_beats_dense_grid(center in 0.0f64..1.0, width in 0.05f64..2.0, kind in 0usize..3) {
        let f = move |x: f64| match kind {
            0 => -(x - center).powi(2),
            1 => -((x - center) / width).abs().powf(1.5),
            _ => (-((x - center) / width).powi(2)).exp(),
        };
        let tol = 1e-9;
        let game = ContinuousGame::new(vec![(0.0, 1.0)], move |x| vec![f(x[0])]).unwrap();
        let x = best_response(&game, &[0.5], 0, tol).unwrap();
        let grid_max = (0..=100_000).map(|k| f(k as f64 / 100_000.0)).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(f(x) >= grid_max - tol, "x={} f={} grid={}", x, f(x), grid_max);
        prop_assert_eq!(golden_section_max(f, 0.0, 1.0, tol), x);
    }
}

#[test]
fn seeded_random_games_cross_check() {
    use secgame::experiments::SplitMix64;
    let mut rng = SplitMix64::new(2024);
    for _ in 0..200 {
        let r = 1 + (rng.next_u64() % 4) as usize;
        let c = 1 + (rng.next_u64() % 4) as usize;
        let v: Vec<f64> = (0..2 * r * c)
            .map(|_| (rng.next_f64() * 3.0).floor())
            .collect();
        let g = FiniteGame::from_fn(vec![r, c], |p| {
            let k = 2 * (p[0] * c + p[1]);
            vec![v[k], v[k + 1]]
        })
        .unwrap();
        let ne = enumerate_pure_nash(&g).unwrap();
        assert_eq!(ne, double_loop_nash(&g));
        for init in g.profiles() {
            let run = best_response_dynamics(&g, &init, 40, 0.0).unwrap();
            if run.converged {
                assert!(ne.contains(run.final_profile()));
            }
        }
    }
}
