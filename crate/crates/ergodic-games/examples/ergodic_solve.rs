//! Solves the ergodic equation `T(u) = lambda e + u`: the long-run value
//! per stage and the relative value of each starting state, verified
//! against a hand-computable game and a closed-form operator with a
//! transcendental eigenvector.
//!
//! ```text
//! cargo run --example ergodic_solve
//! ```

use ergodic_games::shapley::{fixtures, OperatorHandle};
use ergodic_games::solver::{check_solution, extract_strategies, solve_ergodic, SolveOptions};

fn main() {
    // Two states swapping deterministically, one extra unit of payoff in
    // state 1: each state is visited half the time, so the long-run value
    // is 1/2 from everywhere and state 1 is worth 1/2 more up front.
    let game = fixtures::t_circle_game().perturb(&[1.0, 0.0]).expect("finite shift");
    let op = OperatorHandle::from_game(game.clone());
    let sol = solve_ergodic(&op, &SolveOptions::default()).expect("ergodic game");
    println!("cycle with payoff (1, 0):");
    println!("  lambda = {:+.9}   (exact 0.5)", sol.lambda);
    println!("  u      = {:?}   (exact [0.5, 0.0])", sol.u.rep());
    println!("  residual {:.2e} after {} operator evaluations", sol.residual, sol.iterations);
    assert!((sol.lambda - 0.5).abs() < 1e-7);
    assert!(check_solution(&op, sol.lambda, sol.u.rep(), 1e-7).expect("evaluable"));

    // The relative value directly yields stationary almost-optimal play.
    let strategies = extract_strategies(&game, sol.u.rep(), 1e-8).expect("solved game");
    println!("  strategies certified within {:.1e}:", strategies.epsilon);
    for g in &strategies.guarantees {
        println!(
            "    state {}: one-shot value {:+.6}, secured in [{:+.6}, {:+.6}]",
            g.state, g.value, g.lower, g.upper
        );
    }

    // A closed-form operator whose eigenvector involves e: the coordinates
    // differ by exactly 2 - e in the limit.
    let op = fixtures::log_game();
    let sol = solve_ergodic(&op, &SolveOptions { tol: 1e-10, ..SolveOptions::default() })
        .expect("solvable operator");
    let u = sol.u.rep();
    let gap = u[1] - u[0];
    let exact = 2.0 - std::f64::consts::E;
    println!("\nlogarithmic transfer operator:");
    println!("  lambda = {:+.9}   (exact 0)", sol.lambda);
    println!("  u2 - u1 = {:+.9}  (exact 2 - e = {exact:+.9})", gap);
    assert!(sol.lambda.abs() < 1e-8);
    assert!((gap - exact).abs() < 1e-6);
}
