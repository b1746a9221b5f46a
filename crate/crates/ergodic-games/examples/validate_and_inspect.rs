//! Loads a game description from disk, inspects its structure, and shows
//! what validation reports when a file is broken.
//!
//! ```text
//! cargo run --example validate_and_inspect
//! ```

use ergodic_games::game::{FiniteGame, RawGame, StateId};

const GAMMA_GAME: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/gamma_game.json");

fn main() {
    // A valid file loads straight into a checked game.
    let game = FiniteGame::load(GAMMA_GAME).expect("fixture should be valid");
    println!("loaded {GAMMA_GAME}");
    println!("  states: {}", game.n());
    println!("  payoff bound: {}", game.payoff_bound());
    for i in 0..game.n() {
        let state = StateId::new(i);
        let (m, k) = game.num_actions(state);
        println!(
            "  state {state}: {m} MAX action(s) {:?}, {k} MIN action(s) {:?}",
            game.actions_max(state),
            game.actions_min(state)
        );
        for a in 0..m {
            for b in 0..k {
                println!(
                    "    payoff({a},{b}) = {:+.2}, support -> {:?}",
                    game.payoff(state, a, b),
                    game.support(state, a, b)
                );
            }
        }
    }

    // Breaking a transition row is caught with a precise location, not a
    // panic deep inside a solver.
    let mut raw: RawGame = serde_json::from_str(&game.to_json()).expect("round-trip");
    raw.trans[0][0][0][0] += 0.25; // row now sums to 1.25
    raw.payoff[1][0][0] = f64::NAN;
    let report = raw.validate();
    println!("\nafter corrupting the description: {} issue(s)", report.issues.len());
    for issue in &report.issues {
        println!("  {}: {}", issue.location, issue.message);
    }
    assert!(!report.ok());

    // And a checked game never accepts the broken description.
    let err = FiniteGame::from_raw(raw).expect_err("validation must reject");
    println!("\nconstruction refused: {err}");
}
