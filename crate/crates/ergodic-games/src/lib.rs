//! Finite zero-sum stochastic games: ergodicity analysis and the uniform
//! value.
//!
//! A two-player zero-sum stochastic game moves between finitely many states;
//! each stage, both players pick actions, MAX receives a payoff from MIN, and
//! the state transitions at random. This crate answers the questions that
//! matter for long-run play:
//!
//! * **Is the game ergodic?** — i.e. is the long-run average value
//!   independent of the initial state, for every payoff perturbation?
//!   Decided combinatorially (dominion enumeration) and analytically
//!   (boundedness of slice spaces probed through the dynamic-programming
//!   operator), with the two characterizations cross-checked against each
//!   other ([`dominion`]).
//! * **What is the uniform value?** — solved through the ergodic equation
//!   `T(u) = λe + u` for the one-day operator `T`, by a damped fixed-point
//!   iteration whose residual is monitored in the span seminorm
//!   ([`solver`]).
//! * **How should the players act?** — stationary ε-optimal strategies read
//!   off from the solved `u`, with per-state certified guarantees, and
//!   validated by Monte Carlo play ([`sim`]).
//!
//! The building blocks are exposed too: game files and validation
//! ([`game`]), exact one-shot matrix-game solving with certified bounds
//! ([`matrix_game`]), and the operator layer with its contract checks and
//! closed-form reference operators ([`shapley`]).
//!
//! # Where to start
//!
//! The `examples/` directory is the front door — one runnable program per
//! capability:
//!
//! ```text
//! cargo run --example validate_and_inspect
//! cargo run --example matrix_game_value
//! cargo run --example shapley_iteration
//! cargo run --example ergodicity_analysis
//! cargo run --example ergodic_solve
//! cargo run --example perturbation_probes
//! cargo run --example simulate_strategies
//! ```
//!
//! The same functionality is scriptable through the `ergodic-games` binary
//! (`validate`, `matrix-solve`, `iterate`, `analyze`, `solve`, `perturb`,
//! `simulate`); see [`cli`] and the repository README.
//!
//! # A taste
//!
//! ```
//! use ergodic_games::shapley::{fixtures, OperatorHandle};
//! use ergodic_games::solver::{solve_ergodic, SolveOptions};
//!
//! // Cyclic two-state game with an extra unit of payoff in state 1.
//! let game = fixtures::t_circle_game().perturb(&[1.0, 0.0]).unwrap();
//! let op = OperatorHandle::from_game(game);
//! let sol = solve_ergodic(&op, &SolveOptions::default()).unwrap();
//! assert!((sol.lambda - 0.5).abs() < 1e-7);
//! ```

pub mod cli;
pub mod dominion;
pub mod game;
pub mod matrix_game;
pub mod shapley;
pub mod sim;
pub mod solver;

pub use game::{FiniteGame, GameError, StateId, StateSet};
pub use matrix_game::{MatrixGame, MatrixGameSolution};
pub use shapley::{OperatorHandle, QuotientVector};
pub use solver::{ErgodicSolution, SolveError, SolveOptions};
