//! Solves one-shot zero-sum matrix games and exhibits the certificates that
//! come with every solution: explicit mixed strategies whose guarantees
//! bracket the value.
//!
//! ```text
//! cargo run --example matrix_game_value
//! ```

use ergodic_games::matrix_game::{certificates, shift_invariance_check, solve, MatrixGame};

fn report(name: &str, rows: Vec<Vec<f64>>) {
    let game = MatrixGame::from_rows(rows).expect("well-formed matrix");
    let sol = solve(&game, 1e-9).expect("solvable");
    println!("{name} ({}x{}):", game.rows(), game.cols());
    println!("  value = {:+.6}", sol.value);
    println!("  MAX mixes rows    {:?}", round3(&sol.x));
    println!("  MIN mixes columns {:?}", round3(&sol.y));
    println!(
        "  certified: MAX secures >= {:+.6}, MIN concedes <= {:+.6} (gap {:.2e})",
        sol.lower, sol.upper, sol.gap
    );
    // The certificates are recomputable from the strategies alone.
    let (lower, upper) = certificates(&game, &sol.x, &sol.y);
    assert!((lower - sol.lower).abs() < 1e-12 && (upper - sol.upper).abs() < 1e-12);
    // Adding a constant to every entry shifts the value by that constant —
    // the property that lets these games sit inside a dynamic-programming
    // operator.
    assert!(shift_invariance_check(&game, 7.5, 1e-8).expect("solvable"));
    println!();
}

fn round3(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1000.0).round() / 1000.0).collect()
}

fn main() {
    // Fully mixed: each player hides behind the uniform distribution.
    report(
        "rock-paper-scissors",
        vec![vec![0.0, -1.0, 1.0], vec![1.0, 0.0, -1.0], vec![-1.0, 1.0, 0.0]],
    );

    // Mixed at 50/50 with value 0.
    report("matching pennies", vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);

    // A saddle point in pure strategies: row 0 dominates, column 0 replies.
    report("dominant row", vec![vec![3.0, 5.0], vec![1.0, 2.0]]);

    // Degenerate shapes still work: a single row means MIN simply picks the
    // smallest entry.
    report("one row", vec![vec![4.0, -2.0, 7.0]]);
}
