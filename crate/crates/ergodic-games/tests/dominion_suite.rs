//! Structural properties of dominions and agreement between the three
//! ergodicity characterizations (combinatorial, analytic slice probe,
//! solver behavior) on fixtures and random games.

mod common;

use ergodic_games::dominion::{
    enumerate_dominions, ergodicity_crosscheck, is_dominion, largest_dominion_within,
    slice_limit_test, CrosscheckOptions, Player, DEFAULT_ENUM_CAP,
};
use ergodic_games::game::StateSet;
use ergodic_games::shapley::fixtures;
use ergodic_games::solver::{SolveOptions, StallCheck};

fn all_nonempty_subsets(n: usize) -> Vec<StateSet> {
    (1..1u32 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn dominions_are_closed_under_union() {
    let game = fixtures::gamma_game(0.5, &[0.0, 0.5, 1.0]);
    for player in [Player::Max, Player::Min] {
        let report = enumerate_dominions(&game, player, DEFAULT_ENUM_CAP).unwrap();
        for d1 in &report.all_dominions {
            for d2 in &report.all_dominions {
                let union: StateSet = d1.union(d2).cloned().collect();
                assert!(
                    is_dominion(&game, player, &union).unwrap(),
                    "{player}: union of {d1:?} and {d2:?} is not a dominion"
                );
            }
        }
    }
}

#[test]
fn largest_dominion_is_the_union_of_those_inside() {
    for game in [
        fixtures::gamma_game(0.5, &[0.0, 0.5, 1.0]),
        fixtures::t_triangle_game(),
        common::random_game(401),
        common::random_game(402),
    ] {
        for player in [Player::Max, Player::Min] {
            let report = enumerate_dominions(&game, player, DEFAULT_ENUM_CAP).unwrap();
            for s in all_nonempty_subsets(game.n()) {
                let expected: StateSet = report
                    .all_dominions
                    .iter()
                    .filter(|d| d.is_subset(&s))
                    .flatten()
                    .cloned()
                    .collect();
                let got = largest_dominion_within(&game, player, &s);
                assert_eq!(got, expected, "{player}: within {s:?}");
            }
        }
    }
}

#[test]
fn largest_dominion_is_monotone_in_its_bound() {
    let game = common::random_game(403);
    let n = game.n();
    let subsets = all_nonempty_subsets(n);
    for player in [Player::Max, Player::Min] {
        for small in &subsets {
            for big in &subsets {
                if small.is_subset(big) {
                    let inner = largest_dominion_within(&game, player, small);
                    let outer = largest_dominion_within(&game, player, big);
                    assert!(inner.is_subset(&outer), "{player}: {small:?} vs {big:?}");
                }
            }
        }
    }
}

#[test]
fn dominions_ignore_payoff_perturbations() {
    let game = fixtures::gamma_game(0.5, &[0.0, 0.5, 1.0]);
    let perturbed = game.perturb(&[13.0, -2.5, 0.7]).unwrap();
    for player in [Player::Max, Player::Min] {
        let before = enumerate_dominions(&game, player, DEFAULT_ENUM_CAP).unwrap();
        let after = enumerate_dominions(&perturbed, player, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(before.all_dominions, after.all_dominions);
    }
}

#[test]
fn slice_probe_matches_combinatorics_on_every_fixture_subset() {
    for game in [
        fixtures::t_square_game(),
        fixtures::t_circle_game(),
        fixtures::t_triangle_game(),
        fixtures::gamma_game(0.5, &[0.0, 0.5, 1.0]),
    ] {
        for d in all_nonempty_subsets(game.n()) {
            for player in [Player::Max, Player::Min] {
                let combinatorial = is_dominion(&game, player, &d).unwrap();
                let analytic = slice_limit_test(&game, &d, player).unwrap();
                assert_eq!(
                    combinatorial, analytic,
                    "disagreement for {player} on {d:?}"
                );
            }
        }
    }
}

#[test]
fn characterizations_agree_on_50_random_games() {
    let opts = CrosscheckOptions {
        probe_trials: 5,
        solve: SolveOptions {
            tol: 1e-8,
            max_iter: 30_000,
            record_trace: false,
            stall: Some(StallCheck::default()),
            ..SolveOptions::default()
        },
        ..CrosscheckOptions::default()
    };
    let mut ergodic_count = 0;
    let mut probe_agreements = 0;
    for seed in 500..550u64 {
        let game = common::random_game(seed);
        let report = ergodicity_crosscheck(&game, &opts).unwrap();
        assert!(
            report.agree_slice,
            "seed {seed}: slice-space and dominion verdicts disagree"
        );
        if report.combinatorial.ergodic {
            ergodic_count += 1;
        }
        if report.agree_probe {
            probe_agreements += 1;
        }
    }
    // The generator must exercise both verdicts for the agreement claim to
    // mean anything.
    assert!(ergodic_count >= 5, "only {ergodic_count}/50 ergodic games");
    assert!(ergodic_count <= 45, "only {}/50 non-ergodic games", 50 - ergodic_count);
    // The solver probe is budget-limited, so allow a small slip.
    assert!(probe_agreements >= 45, "probe agreed on {probe_agreements}/50");
}
