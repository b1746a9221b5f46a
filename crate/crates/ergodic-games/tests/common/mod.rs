//! Shared oracles for the integration suites.
//!
//! Everything here is deliberately independent of the library's own solver
//! paths: the minimax oracle searches the strategy simplex directly instead
//! of pivoting, the simulation oracle propagates exact state distributions,
//! and the generator builds games straight from raw tensors.

#![allow(dead_code)]

pub mod schema;

use ergodic_games::game::{FiniteGame, StateId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// ---- minimax oracle ------------------------------------------------------

/// Evaluates MAX's guarantee for mixed action `x`: `min_j sum_i x_i M[i][j]`.
fn guarantee(matrix: &[Vec<f64>], x: &[f64]) -> f64 {
    let cols = matrix[0].len();
    (0..cols)
        .map(|j| x.iter().zip(matrix).map(|(xi, row)| xi * row[j]).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Projects onto the probability simplex by clamping and renormalizing;
/// returns `None` when everything clamps away.
fn project(x: &[f64]) -> Option<Vec<f64>> {
    let clamped: Vec<f64> = x.iter().map(|&v| v.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if total <= 1e-12 {
        return None;
    }
    Some(clamped.iter().map(|&v| v / total).collect())
}

/// Enumerates simplex grid points with `k` subdivisions over `m` coordinates.
fn simplex_grid(m: usize, k: usize) -> Vec<Vec<f64>> {
    fn rec(remaining: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for take in 0..=left {
            prefix.push(take);
            rec(remaining - 1, left - take, prefix, out);
            prefix.pop();
        }
    }
    let mut counts = Vec::new();
    rec(m, k, &mut Vec::new(), &mut counts);
    counts
        .into_iter()
        .map(|c| c.into_iter().map(|v| v as f64 / k as f64).collect())
        .collect()
}

/// Best guarantee for MAX found by concave maximization over the simplex:
/// a coarse grid pass followed by pattern search with shrinking radius.
/// The returned value is a certified lower bound on the game value (it is
/// attained by an explicit mixed action).
fn max_side_lower(matrix: &[Vec<f64>]) -> f64 {
    let m = matrix.len();
    let subdivisions = match m {
        1 => return guarantee(matrix, &[1.0]),
        2 => 64,
        3 => 24,
        4 => 12,
        _ => 8,
    };
    let mut best_x = vec![1.0 / m as f64; m];
    let mut best = guarantee(matrix, &best_x);
    for x in simplex_grid(m, subdivisions) {
        let v = guarantee(matrix, &x);
        if v > best {
            best = v;
            best_x = x;
        }
    }
    // Pattern search over {-r, 0, r}^m moves; the objective is concave
    // (a minimum of linear functions), so local improvement is global.
    let mut radius = 1.0 / subdivisions as f64;
    while radius > 1e-9 {
        let mut improved = true;
        while improved {
            improved = false;
            for pattern in 0..3usize.pow(m as u32) {
                let mut candidate = best_x.clone();
                let mut digits = pattern;
                for c in candidate.iter_mut() {
                    match digits % 3 {
                        1 => *c += radius,
                        2 => *c -= radius,
                        _ => {}
                    }
                    digits /= 3;
                }
                if let Some(x) = project(&candidate) {
                    let v = guarantee(matrix, &x);
                    if v > best + 1e-15 {
                        best = v;
                        best_x = x;
                        improved = true;
                    }
                }
            }
        }
        radius *= 0.5;
    }
    best
}

/// Certified bracket `[lo, hi]` for the minimax value of a matrix game,
/// computed without LP machinery. `lo` comes from an explicit MAX mixture;
/// `hi` from an explicit MIN mixture through the skew transpose identity
/// `val(-M') = -val(M)`. Always correct, sometimes loose (the pattern
/// search can stall on nonsmooth ridges).
pub fn oracle_bracket(matrix: &[Vec<f64>]) -> (f64, f64) {
    let lo = max_side_lower(matrix);
    let rows = matrix.len();
    let cols = matrix[0].len();
    let neg_t: Vec<Vec<f64>> =
        (0..cols).map(|j| (0..rows).map(|i| -matrix[i][j]).collect()).collect();
    let hi = -max_side_lower(&neg_t);
    (lo, hi)
}

/// Solves a dense linear system by Gaussian elimination with partial
/// pivoting; `None` when the pivot collapses (singular system).
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n).max_by(|&p, &q| {
            a[p][col].abs().partial_cmp(&a[q][col].abs()).unwrap()
        })?;
        if a[pivot_row][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

fn subsets_of_size(count: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, count: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..count {
            current.push(i);
            rec(i + 1, count, size, current, out);
            current.pop();
        }
    }
    rec(0, count, size, &mut current, &mut out);
    out
}

/// Exact minimax values found by enumerating square subsystems: for every
/// equal-size choice of row and column supports, solve for equalizing mixed
/// actions and a common value, then keep candidates that are genuine
/// probability vectors and optimal against every pure action of the full
/// matrix. Every finite game admits at least one such basic solution, and
/// each one's value equals the game value, so the returned list is nonempty
/// and (up to roundoff) constant.
pub fn kernel_values(matrix: &[Vec<f64>]) -> Vec<f64> {
    let rows = matrix.len();
    let cols = matrix[0].len();
    let scale = matrix
        .iter()
        .flatten()
        .fold(1.0f64, |acc, &v| acc.max(v.abs()));
    let slack = 1e-8 * scale;
    let mut values = Vec::new();

    for size in 1..=rows.min(cols) {
        for row_set in subsets_of_size(rows, size) {
            for col_set in subsets_of_size(cols, size) {
                // Unknowns (x_S, v): MAX's mixture equalizes chosen columns.
                let mut ax = vec![vec![0.0; size + 1]; size + 1];
                let mut bx = vec![0.0; size + 1];
                for (eq, &t) in col_set.iter().enumerate() {
                    for (k, &s) in row_set.iter().enumerate() {
                        ax[eq][k] = matrix[s][t];
                    }
                    ax[eq][size] = -1.0;
                }
                ax[size][..size].fill(1.0);
                bx[size] = 1.0;
                let Some(xv) = solve_linear(ax, bx) else { continue };
                let (x_sub, v) = (&xv[..size], xv[size]);

                // Unknowns (y_T, w): MIN's mixture equalizes chosen rows.
                let mut ay = vec![vec![0.0; size + 1]; size + 1];
                let mut by = vec![0.0; size + 1];
                for (eq, &s) in row_set.iter().enumerate() {
                    for (k, &t) in col_set.iter().enumerate() {
                        ay[eq][k] = matrix[s][t];
                    }
                    ay[eq][size] = -1.0;
                }
                ay[size][..size].fill(1.0);
                by[size] = 1.0;
                let Some(yw) = solve_linear(ay, by) else { continue };
                let (y_sub, w) = (&yw[..size], yw[size]);

                if (v - w).abs() > slack {
                    continue;
                }
                if x_sub.iter().any(|&p| p < -slack) || y_sub.iter().any(|&p| p < -slack) {
                    continue;
                }

                // Optimality against the full matrix.
                let mut x = vec![0.0; rows];
                for (k, &s) in row_set.iter().enumerate() {
                    x[s] = x_sub[k].max(0.0);
                }
                let mut y = vec![0.0; cols];
                for (k, &t) in col_set.iter().enumerate() {
                    y[t] = y_sub[k].max(0.0);
                }
                let x_guarantee_ok = (0..cols).all(|j| {
                    (0..rows).map(|i| x[i] * matrix[i][j]).sum::<f64>() >= v - slack
                });
                let y_guarantee_ok = (0..rows).all(|i| {
                    (0..cols).map(|j| matrix[i][j] * y[j]).sum::<f64>() <= v + slack
                });
                if x_guarantee_ok && y_guarantee_ok {
                    values.push(v);
                }
            }
        }
    }
    values
}

// ---- exact small-matrix values -------------------------------------------

/// Exact value for matrices with a single row or column, or 2x2.
pub fn closed_form_value(matrix: &[Vec<f64>]) -> Option<f64> {
    let rows = matrix.len();
    let cols = matrix[0].len();
    if rows == 1 {
        return Some(matrix[0].iter().cloned().fold(f64::INFINITY, f64::min));
    }
    if cols == 1 {
        return Some(matrix.iter().map(|r| r[0]).fold(f64::NEG_INFINITY, f64::max));
    }
    if rows == 2 && cols == 2 {
        let (a, b, c, d) = (matrix[0][0], matrix[0][1], matrix[1][0], matrix[1][1]);
        // Pure saddle point: maximin equals minimax.
        let maximin = a.min(b).max(c.min(d));
        let minimax = a.max(c).min(b.max(d));
        if (maximin - minimax).abs() <= 1e-14 {
            return Some(maximin);
        }
        return Some((a * d - b * c) / (a + d - b - c));
    }
    None
}

// ---- exact play expectation ----------------------------------------------

/// Expected mean stage payoff over `horizon` stages starting from
/// `initial_state` (0-based), under fixed stationary mixed strategies;
/// computed by exact distribution propagation.
pub fn exact_mean_payoff(
    game: &FiniteGame,
    sigma: &[Vec<f64>],
    tau: &[Vec<f64>],
    initial_state: usize,
    horizon: usize,
) -> f64 {
    let n = game.n();
    let mut stage_reward = vec![0.0; n];
    let mut transition = vec![vec![0.0; n]; n];
    for i in 0..n {
        let state = StateId::new(i);
        let (na, nb) = game.num_actions(state);
        for a in 0..na {
            for b in 0..nb {
                let weight = sigma[i][a] * tau[i][b];
                if weight == 0.0 {
                    continue;
                }
                stage_reward[i] += weight * game.payoff(state, a, b);
                for (l, p) in game.trans_row(state, a, b).iter().enumerate() {
                    transition[i][l] += weight * p;
                }
            }
        }
    }
    let mut dist = vec![0.0; n];
    dist[initial_state] = 1.0;
    let mut total = 0.0;
    for _ in 0..horizon {
        total += dist.iter().zip(&stage_reward).map(|(d, r)| d * r).sum::<f64>();
        let mut next = vec![0.0; n];
        for i in 0..n {
            if dist[i] == 0.0 {
                continue;
            }
            for l in 0..n {
                next[l] += dist[i] * transition[i][l];
            }
        }
        dist = next;
    }
    total / horizon as f64
}

// ---- random game generator -----------------------------------------------

/// Deterministic random game: 2..=5 states, 1..=3 actions per player per
/// state, payoffs in [-5, 5], transition rows with random supports. The
/// per-game support density is itself randomized (0.2..0.8), so the stream
/// mixes strongly connected games with sparse ones full of absorbing
/// structure. Seeds map to games one-to-one across runs and platforms.
pub fn random_game(seed: u64) -> FiniteGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=5usize);
    let density = rng.gen_range(0.2..0.8);
    let actions_max: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let actions_min: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=3)).collect();

    let mut payoff = Vec::with_capacity(n);
    let mut trans = Vec::with_capacity(n);
    for i in 0..n {
        let mut pay_i = Vec::new();
        let mut trans_i = Vec::new();
        for _a in 0..actions_max[i] {
            let mut pay_row = Vec::new();
            let mut trans_row = Vec::new();
            for _b in 0..actions_min[i] {
                pay_row.push(rng.gen_range(-5.0..5.0));
                // Random support at the game's density; ensure at least one
                // member.
                let mut support: Vec<usize> = (0..n).filter(|_| rng.gen_bool(density)).collect();
                if support.is_empty() {
                    support.push(rng.gen_range(0..n));
                }
                let weights: Vec<f64> = support.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
                let total: f64 = weights.iter().sum();
                let mut row = vec![0.0; n];
                for (l, w) in support.iter().zip(&weights) {
                    row[*l] = w / total;
                }
                trans_row.push(row);
            }
            pay_i.push(pay_row);
            trans_i.push(trans_row);
        }
        payoff.push(pay_i);
        trans.push(trans_i);
    }
    FiniteGame::from_tensors(payoff, trans).expect("generated game is valid")
}
