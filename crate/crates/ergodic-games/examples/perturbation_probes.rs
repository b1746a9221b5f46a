//! Probes the solvability boundary: on an ergodic game every payoff shift
//! keeps the ergodic equation solvable; on a non-ergodic game unsolvable
//! shifts exist, and a dominion witness tells the search where to find one.
//! A multi-start probe also inspects whether the solution is unique.
//!
//! ```text
//! cargo run --example perturbation_probes
//! ```

use ergodic_games::shapley::fixtures;
use ergodic_games::solver::{
    solvability_probe, targeted_unsolvable_search, uniqueness_probe, SolveOptions, StallCheck,
    UniquenessOutcome,
};

fn main() {
    // Fast-failing settings: unsolvable instances plateau and are cut off
    // early instead of burning the whole iteration budget.
    let opts = SolveOptions { stall: Some(StallCheck::default()), ..SolveOptions::default() };

    // Ergodic: the deterministic two-state cycle. All random shifts solve.
    let cycle = fixtures::t_circle();
    let probe = solvability_probe(&cycle, 20, 7, &opts).expect("well-posed");
    println!("deterministic cycle: {:.0}% of 20 random shifts solvable", 100.0 * probe.fraction_solvable);
    assert_eq!(probe.fraction_solvable, 1.0);

    // Non-ergodic: two isolated states. A shift is solvable only when both
    // coordinates agree, so random draws essentially never are.
    let square = fixtures::t_square();
    let probe = solvability_probe(&square, 20, 7, &opts).expect("well-posed");
    println!("two isolated states: {:.0}% of 20 random shifts solvable", 100.0 * probe.fraction_solvable);
    assert_eq!(probe.fraction_solvable, 0.0);

    // With a witness (MAX can hold state 1, MIN can hold state 2), the
    // targeted search produces a certified unsolvable shift immediately.
    let witness = ([0].into(), [1].into());
    let search = targeted_unsolvable_search(&square, &witness, 50, 7, &opts).expect("valid witness");
    let hit = search.found.expect("two isolated states are not ergodic");
    println!(
        "targeted search: draw {} with shift {:?} is unsolvable (best residual {:.3})",
        hit.draw_index,
        hit.g.iter().map(|x| (x * 100.0).round() / 100.0).collect::<Vec<_>>(),
        hit.residual
    );

    // Solvable does not mean uniquely solvable. The max/min order operator
    // at zero shift has a whole family of solutions...
    let triangle = fixtures::t_triangle();
    match uniqueness_probe(&triangle, &[0.0, 0.0], 10, 7, &opts).expect("solvable") {
        UniquenessOutcome::MultipleFound { solutions } => {
            println!("order game, zero shift: {} distinct solutions found, e.g.", solutions.len());
            for u in solutions.iter().take(3) {
                println!("  u = {:?}", u.rep().iter().map(|x| (x * 1000.0).round() / 1000.0).collect::<Vec<_>>());
            }
        }
        UniquenessOutcome::Unique { .. } => unreachable!("order operator has many solutions"),
    }

    // ...while the shifted cycle pins its solution down to one class.
    match uniqueness_probe(&cycle, &[1.0, 0.0], 10, 7, &opts).expect("solvable") {
        UniquenessOutcome::Unique { lambda, u } => {
            println!("cycle, shift (1, 0): unique solution lambda {lambda:+.4}, u {:?}", u.rep());
        }
        UniquenessOutcome::MultipleFound { .. } => unreachable!("ergodic equation here is rigid"),
    }
}
