//! Closes the loop between analysis and play: solve a game whose optimal
//! play is genuinely mixed, read off stationary strategies, then let them
//! actually play — Monte Carlo runs track the predicted long-run value, and
//! a best-response sweep confirms neither player can be exploited beyond
//! the certified slack.
//!
//! ```text
//! cargo run --example simulate_strategies
//! ```

use ergodic_games::dominion::Player;
use ergodic_games::game::{FiniteGame, RawGame, StateId};
use ergodic_games::shapley::OperatorHandle;
use ergodic_games::sim::{exploitability, simulate};
use ergodic_games::solver::{extract_strategies, solve_ergodic, SolveOptions};

/// Matching pennies with a penalty box. In the arena (state 1) MAX earns +1
/// by matching MIN's coin and -1 otherwise — and a mismatch also sends the
/// play to the penalty state 2, which costs MAX another 0.5 before
/// returning to the arena. Neither player can confine the play, so the game
/// is ergodic, and the arena strategies must be mixed.
fn penalty_pennies() -> FiniteGame {
    let stay = vec![1.0, 0.0];
    let fall = vec![0.0, 1.0];
    FiniteGame::from_raw(RawGame {
        n: 2,
        actions_max: vec![vec!["heads".into(), "tails".into()], vec!["sit".into()]],
        actions_min: vec![vec!["heads".into(), "tails".into()], vec!["sit".into()]],
        payoff: vec![vec![vec![1.0, -1.0], vec![-1.0, 1.0]], vec![vec![-0.5]]],
        trans: vec![
            vec![vec![stay.clone(), fall.clone()], vec![fall, stay.clone()]],
            vec![vec![stay]],
        ],
    })
    .expect("well-formed game")
}

fn main() {
    let game = penalty_pennies();
    let op = OperatorHandle::from_game(game.clone());
    let sol = solve_ergodic(&op, &SolveOptions::default()).expect("ergodic game");
    // Both players mix 50/50 in the arena, so half the stages fall to the
    // penalty box: the play spends 2/3 of its time in the arena (earning 0
    // on average) and 1/3 in the box (earning -1/2), hence lambda = -1/6.
    assert!((sol.lambda + 1.0 / 6.0).abs() < 1e-7);
    let strategies = extract_strategies(&game, sol.u.rep(), 1e-6).expect("solved game");
    println!(
        "long-run value lambda = {:+.6}; strategies certified within {:.1e}",
        sol.lambda, strategies.epsilon
    );
    for i in 0..game.n() {
        let state = StateId::new(i);
        println!(
            "  state {state}: MAX plays {:?}, MIN plays {:?}",
            round3(&strategies.sigma[i]),
            round3(&strategies.tau[i])
        );
    }

    // Played against each other over a long horizon, the strategies earn
    // lambda per stage from every starting state.
    let horizon = 2000;
    let episodes = 400;
    println!("\nMonte Carlo, {episodes} episodes x {horizon} stages:");
    for i in 0..game.n() {
        let start = StateId::new(i);
        let result =
            simulate(&game, &strategies.sigma, &strategies.tau, start, horizon, episodes, 42)
                .expect("valid strategies");
        let bias = 2.0 * sol.u.spread() / horizon as f64;
        println!(
            "  from state {start}: mean payoff {:+.6} +- {:.1e}  (lambda {:+.6})",
            result.mean_payoff, result.stderr, sol.lambda
        );
        assert!(
            (result.mean_payoff - sol.lambda).abs()
                <= 4.0 * result.stderr + bias + strategies.epsilon,
            "empirical mean strayed from lambda"
        );
    }

    // Exploitability: even a clairvoyant opponent gains at most the horizon
    // bias plus the certified slack against either stationary strategy.
    let start = StateId::new(0);
    let vs_max =
        exploitability(&game, Player::Max, &strategies.sigma, start, horizon).expect("valid strategy");
    let vs_min =
        exploitability(&game, Player::Min, &strategies.tau, start, horizon).expect("valid strategy");
    let slack = 2.0 * sol.u.spread() / horizon as f64 + strategies.epsilon;
    println!("\nbest responses from state 1 over {horizon} stages:");
    println!("  MIN best-responding to MAX's strategy holds it to {vs_max:+.6} >= lambda - {slack:.1e}");
    println!("  MAX best-responding to MIN's strategy reaches   {vs_min:+.6} <= lambda + {slack:.1e}");
    assert!(vs_max >= sol.lambda - slack && vs_min <= sol.lambda + slack);
}

fn round3(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1000.0).round() / 1000.0).collect()
}
