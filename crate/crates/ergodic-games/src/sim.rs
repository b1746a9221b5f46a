//! Monte Carlo play under fixed stationary strategies, and exact
//! best-response values for exploitability checks.
//!
//! [`simulate`] estimates the k-stage average payoff from a given initial
//! state by sampling episodes; [`exploitability`] computes, exactly, the
//! k-stage value a best-responding opponent achieves against one frozen
//! strategy, by value iteration on the induced one-player game. Together
//! they validate uniform-value guarantees empirically: a strategy extracted
//! from a relative value `u` must hold its guarantee up to
//! `epsilon + 2 ||u||_inf / k` at every horizon `k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dominion::Player;
use crate::game::{FiniteGame, StateId};

/// Tolerance for strategy-vector validation (entries and row sums), matching
/// the transition-row tolerance of the game format.
const STRATEGY_TOL: f64 = 1e-9;

/// Errors from simulation inputs.
#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("invalid strategy for state {state}: {detail}")]
    InvalidStrategy { state: StateId, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Monte Carlo estimate of the k-stage average payoff.
#[derive(Debug, Clone)]
pub struct SimulationResult {
    pub initial_state: StateId,
    pub horizon: usize,
    pub episodes: usize,
    /// Mean over episodes of the per-episode average stage payoff.
    pub mean_payoff: f64,
    /// Sample standard deviation of the episode means divided by
    /// `sqrt(episodes)`; 0 for a single episode.
    pub stderr: f64,
    pub seed: u64,
}

fn validate_strategy(
    game: &FiniteGame,
    strategy: &[Vec<f64>],
    player: Player,
) -> Result<(), SimError> {
    if strategy.len() != game.n() {
        return Err(SimError::InvalidArgument(format!(
            "strategy for {player} has {} per-state vectors, game has {} states",
            strategy.len(),
            game.n()
        )));
    }
    for (i, probs) in strategy.iter().enumerate() {
        let state = StateId::new(i);
        let (m, k) = game.num_actions(state);
        let expected = match player {
            Player::Max => m,
            Player::Min => k,
        };
        if probs.len() != expected {
            return Err(SimError::InvalidStrategy {
                state,
                detail: format!("{} weights for {expected} actions", probs.len()),
            });
        }
        let mut sum = 0.0;
        for &p in probs {
            if !p.is_finite() || p < -1e-12 {
                return Err(SimError::InvalidStrategy {
                    state,
                    detail: format!("weight {p} is not a probability"),
                });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > STRATEGY_TOL {
            return Err(SimError::InvalidStrategy {
                state,
                detail: format!("weights sum to {sum}, outside 1 ± {STRATEGY_TOL:e}"),
            });
        }
    }
    Ok(())
}

/// Samples an index from nonnegative weights (already validated to sum to 1
/// within tolerance); the draw is normalized by the actual sum so dust-level
/// deviations cannot bias the tail.
fn sample_index(weights: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let total: f64 = weights.iter().map(|w| w.max(0.0)).sum();
    let mut target = rng.gen::<f64>() * total;
    for (idx, &w) in weights.iter().enumerate() {
        let w = w.max(0.0);
        if target < w {
            return idx;
        }
        target -= w;
    }
    weights.len() - 1
}

/// Compensated (Kahan) sum in slice order, so the reduction is independent
/// of how episodes were scheduled across threads.
fn kahan_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Estimates the k-stage average payoff `gamma_i^k(sigma, tau)` from
/// `initial_state` by Monte Carlo: each episode samples actions from the
/// stationary strategies, accumulates stage payoffs for `horizon` stages,
/// and transitions by the game's law. Episodes run in parallel on
/// independent RNG streams; for a fixed seed the result is bit-identical
/// regardless of thread count.
pub fn simulate(
    game: &FiniteGame,
    sigma: &[Vec<f64>],
    tau: &[Vec<f64>],
    initial_state: StateId,
    horizon: usize,
    episodes: usize,
    seed: u64,
) -> Result<SimulationResult, SimError> {
    if initial_state.index() >= game.n() {
        return Err(SimError::InvalidArgument(format!(
            "initial state {initial_state} out of range for {} states",
            game.n()
        )));
    }
    if horizon == 0 {
        return Err(SimError::InvalidArgument("horizon must be at least 1".into()));
    }
    if episodes == 0 {
        return Err(SimError::InvalidArgument("need at least one episode".into()));
    }
    validate_strategy(game, sigma, Player::Max)?;
    validate_strategy(game, tau, Player::Min)?;

    let means: Vec<f64> = (0..episodes)
        .into_par_iter()
        .map(|episode| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(episode as u64 + 1);
            let mut state = initial_state.index();
            let mut total = 0.0;
            let mut carry = 0.0;
            for _ in 0..horizon {
                let sid = StateId::new(state);
                let a = sample_index(&sigma[state], &mut rng);
                let b = sample_index(&tau[state], &mut rng);
                // Kahan-accumulate the stage payoffs within the episode.
                let y = game.payoff(sid, a, b) - carry;
                let t = total + y;
                carry = (t - total) - y;
                total = t;
                state = sample_index(game.trans_row(sid, a, b), &mut rng);
            }
            total / horizon as f64
        })
        .collect();

    let mean_payoff = kahan_sum(means.iter().copied()) / episodes as f64;
    let stderr = if episodes > 1 {
        let ss = kahan_sum(means.iter().map(|m| (m - mean_payoff) * (m - mean_payoff)));
        (ss / (episodes - 1) as f64 / episodes as f64).sqrt()
    } else {
        0.0
    };
    Ok(SimulationResult { initial_state, horizon, episodes, mean_payoff, stderr, seed })
}

/// Exact k-stage value of the one-player game where `player`'s stationary
/// strategy is frozen and the opponent best-responds, from `initial_state`.
///
/// Computed by value iteration on the induced one-player operator: with MAX
/// frozen to `sigma`, each stage the opponent picks the minimizing column of
/// the `sigma`-averaged payoff-plus-continuation; symmetrically with MIN
/// frozen. Against an extracted strategy pair this certifies the uniform
/// guarantee `lambda - epsilon - 2||u||_inf/k <= best response <= lambda +
/// epsilon + 2||u||_inf/k`.
pub fn exploitability(
    game: &FiniteGame,
    player: Player,
    strategy: &[Vec<f64>],
    initial_state: StateId,
    horizon: usize,
) -> Result<f64, SimError> {
    if initial_state.index() >= game.n() {
        return Err(SimError::InvalidArgument(format!(
            "initial state {initial_state} out of range for {} states",
            game.n()
        )));
    }
    if horizon == 0 {
        return Err(SimError::InvalidArgument("horizon must be at least 1".into()));
    }
    validate_strategy(game, strategy, player)?;

    let n = game.n();
    let mut w = vec![0.0; n];
    for _ in 0..horizon {
        let mut next = vec![0.0; n];
        for i in 0..n {
            let state = StateId::new(i);
            let (m, k) = game.num_actions(state);
            let response = |own: usize, opp: usize| -> f64 {
                let (a, b) = match player {
                    Player::Max => (own, opp),
                    Player::Min => (opp, own),
                };
                game.payoff(state, a, b)
                    + game.trans_row(state, a, b).iter().zip(&w).map(|(p, v)| p * v).sum::<f64>()
            };
            let (own_count, opp_count) = match player {
                Player::Max => (m, k),
                Player::Min => (k, m),
            };
            let averaged = |opp: usize| -> f64 {
                (0..own_count).map(|own| strategy[i][own] * response(own, opp)).sum()
            };
            next[i] = match player {
                // MAX frozen: the minimizer picks the best column.
                Player::Max => (0..opp_count).map(averaged).fold(f64::INFINITY, f64::min),
                // MIN frozen: the maximizer picks the best row.
                Player::Min => (0..opp_count).map(averaged).fold(f64::NEG_INFINITY, f64::max),
            };
        }
        w = next;
    }
    Ok(w[initial_state.index()] / horizon as f64)
}
