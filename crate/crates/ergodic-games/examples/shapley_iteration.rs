//! Runs the finite-horizon value recursion `v^k = T^k(0) / k` and watches it
//! flatten toward the constant vector `lambda e` — the dynamic-programming
//! route to the long-run value, with its `O(1/k)` rate on display.
//!
//! ```text
//! cargo run --example shapley_iteration
//! ```

use ergodic_games::shapley::{fixtures, hilbert, value_iteration, OperatorHandle};
use ergodic_games::solver::{solve_ergodic, SolveOptions};

fn main() {
    // An ergodic three-state game, with a payoff shift so the long-run
    // value and the transient are both nonzero: the normalized horizon
    // values converge to a constant vector.
    let game = fixtures::gamma_game(0.5, &[0.0, 0.5, 1.0])
        .perturb(&[0.3, -0.1, 0.2])
        .expect("finite shift");
    let op = OperatorHandle::from_game(game);

    let steps = 400;
    let trace = value_iteration(&op, steps).expect("bounded iterates");
    println!("horizon-normalized values v^k = T^k(0)/k:");
    println!("{:>6}  {:>30}  {:>10}", "k", "v^k", "spread");
    for record in &trace.records {
        if [1, 2, 5, 10, 25, 50, 100, 200, 400].contains(&record.k) {
            let v: Vec<String> = record.value.iter().map(|x| format!("{x:+.4}")).collect();
            println!("{:>6}  {:>30}  {:>10.2e}", record.k, v.join(" "), hilbert(&record.value));
        }
    }

    // The limit is the solution of the ergodic equation T(u) = lambda e + u.
    let sol = solve_ergodic(&op, &SolveOptions::default()).expect("ergodic");
    let last = trace.last().expect("nonempty trace");
    println!("\nergodic equation: lambda = {:+.6} (residual {:.1e})", sol.lambda, sol.residual);
    let worst = last
        .value
        .iter()
        .map(|v| (v - sol.lambda).abs())
        .fold(0.0, f64::max);
    println!("max |v^{} - lambda| = {:.3e}", last.k, worst);
    // The error envelope 2*hilbert(u)/k certifies the observed gap.
    let envelope = 2.0 * sol.u.spread() / last.k as f64;
    println!("envelope 2*span(u)/k = {:.3e}", envelope);
    assert!(worst <= envelope + 1e-9, "rate bound violated");
}
