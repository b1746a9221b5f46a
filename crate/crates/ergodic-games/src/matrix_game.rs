//! Exact value and optimal mixed strategies of one-shot zero-sum matrix games.
//!
//! The value of `M` is computed by linear programming. After shifting the
//! matrix so every entry is at least 1 (the value shifts by the same amount,
//! which is undone at the end), MIN's normalized problem is the standard form
//!
//! ```text
//! max 1'w   subject to   M'w <= 1,  w >= 0,
//! ```
//!
//! whose slack basis is immediately feasible, so a dense primal simplex with
//! Bland's anti-cycling rule solves it without a phase-1. The optimum `W`
//! gives the shifted value `1/W`, MIN's strategy `w/W`, and MAX's strategy
//! from the dual prices on the slack columns. Every solution is verified
//! against its own guarantee certificates before being returned.

/// Default tolerance for certificate checks (duality gap, guarantee slack).
pub const DEFAULT_LP_TOL: f64 = 1e-9;

/// Iteration cap for the simplex: `50 * (rows + cols)` pivots.
const PIVOT_CAP_FACTOR: usize = 50;

/// A real payoff matrix; rows are MAX's actions, columns MIN's.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    rows: usize,
    cols: usize,
    /// Row-major entries, `data[a * cols + b]`.
    data: Vec<f64>,
}

/// Errors from matrix construction or the LP solve.
#[derive(Debug, thiserror::Error)]
pub enum MatrixGameError {
    #[error("matrix must have at least one row and one column")]
    Empty,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    WrongSize { rows: usize, cols: usize, expected: usize, got: usize },
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, got: usize },
    #[error("non-finite entry {value} at ({row}, {col})")]
    NonFinite { row: usize, col: usize, value: f64 },
    #[error("LP solve failed: {0}")]
    NumericalFailure(String),
}

impl MatrixGame {
    /// Builds a `rows x cols` game from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, MatrixGameError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixGameError::Empty);
        }
        if data.len() != rows * cols {
            return Err(MatrixGameError::WrongSize { rows, cols, expected: rows * cols, got: data.len() });
        }
        for (idx, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatrixGameError::NonFinite { row: idx / cols, col: idx % cols, value: v });
            }
        }
        Ok(MatrixGame { rows, cols, data })
    }

    /// Builds a game from nested rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, MatrixGameError> {
        let m = rows.len();
        let k = rows.first().map_or(0, |r| r.len());
        if m == 0 || k == 0 {
            return Err(MatrixGameError::Empty);
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(MatrixGameError::Ragged { row: a, expected: k, got: row.len() });
            }
        }
        Self::new(m, k, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at MAX action `a`, MIN action `b`.
    pub fn at(&self, a: usize, b: usize) -> f64 {
        self.data[a * self.cols + b]
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Transposed game with negated entries; its value is `-value(self)` and
    /// the players swap roles.
    pub fn skew_transpose(&self) -> MatrixGame {
        let mut data = vec![0.0; self.data.len()];
        for a in 0..self.rows {
            for b in 0..self.cols {
                data[b * self.rows + a] = -self.at(a, b);
            }
        }
        MatrixGame { rows: self.cols, cols: self.rows, data }
    }
}

/// Value and optimal strategies of a matrix game, with guarantee certificates.
#[derive(Debug, Clone)]
pub struct MatrixGameSolution {
    /// Game value: `max_x min_y x' M y`.
    pub value: f64,
    /// Optimal mixed strategy of the maximizer (over rows); sums to 1.
    pub x: Vec<f64>,
    /// Optimal mixed strategy of the minimizer (over columns); sums to 1.
    pub y: Vec<f64>,
    /// `min_b (x' M)_b`: payoff MAX guarantees with `x` against any column.
    pub lower: f64,
    /// `max_a (M y)_a`: payoff MIN concedes at most with `y` against any row.
    pub upper: f64,
    /// Duality gap `upper - lower`; at most the solve tolerance.
    pub gap: f64,
}

/// Guarantees delivered by a strategy pair against a matrix, used both for
/// the solver's self-check and by callers verifying almost-optimality.
pub fn certificates(game: &MatrixGame, x: &[f64], y: &[f64]) -> (f64, f64) {
    let lower = (0..game.cols)
        .map(|b| (0..game.rows).map(|a| x[a] * game.at(a, b)).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    let upper = (0..game.rows)
        .map(|a| (0..game.cols).map(|b| game.at(a, b) * y[b]).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max);
    (lower, upper)
}

/// Solves the matrix game to optimality and self-checks the result: both
/// players' guarantee certificates must bracket the value within `tol`, the
/// duality gap must not exceed `tol`, and the value must lie between the
/// extreme entries. Any violation is reported as a
/// [`MatrixGameError::NumericalFailure`] rather than returned silently.
pub fn solve(game: &MatrixGame, tol: f64) -> Result<MatrixGameSolution, MatrixGameError> {
    // Normalize to O(1) entries first: the tableau stays well conditioned no
    // matter how large the payoffs are, and the value simply scales back.
    let scale: f64 = game.data.iter().fold(1.0f64, |acc, &v| acc.max(v.abs()));
    let shift = 1.0 - game.min_entry() / scale;
    let (w, duals, objective) = simplex_max(game, scale, shift)?;

    let mut y: Vec<f64> = w.iter().map(|&v| v / objective).collect();
    let mut x: Vec<f64> = duals.iter().map(|&v| v / objective).collect();
    clean_distribution(&mut x, tol).map_err(|e| {
        MatrixGameError::NumericalFailure(format!("MAX strategy from dual prices is not a distribution: {e}"))
    })?;
    clean_distribution(&mut y, tol).map_err(|e| {
        MatrixGameError::NumericalFailure(format!("MIN strategy is not a distribution: {e}"))
    })?;

    let value = scale * (1.0 / objective - shift);
    let (lower, upper) = certificates(game, &x, &y);
    let gap = upper - lower;
    if !(lower >= value - tol && upper <= value + tol) {
        return Err(MatrixGameError::NumericalFailure(format!(
            "certificates [{lower}, {upper}] do not bracket value {value} within {tol:e}"
        )));
    }
    if gap > tol {
        return Err(MatrixGameError::NumericalFailure(format!(
            "duality gap {gap:e} exceeds tolerance {tol:e}"
        )));
    }
    if value < game.min_entry() - tol || value > game.max_entry() + tol {
        return Err(MatrixGameError::NumericalFailure(format!(
            "value {value} outside entry range [{}, {}]",
            game.min_entry(),
            game.max_entry()
        )));
    }
    Ok(MatrixGameSolution { value, x, y, lower, upper, gap })
}

/// Checks that solving `M + c` yields `value(M) + c`, within `2 * tol` to
/// allow each solve its own tolerance.
pub fn shift_invariance_check(game: &MatrixGame, c: f64, tol: f64) -> Result<bool, MatrixGameError> {
    let base = solve(game, tol)?.value;
    let shifted_data: Vec<f64> = game.data.iter().map(|&v| v + c).collect();
    let shifted = MatrixGame::new(game.rows, game.cols, shifted_data)?;
    let moved = solve(&shifted, tol)?.value;
    Ok((moved - (base + c)).abs() <= 2.0 * tol)
}

/// Runs the primal simplex on `max 1'w, M'w <= 1, w >= 0` for the
/// normalized matrix `M' = M/scale + shift`, whose entries lie in `[1, 3]`.
/// Returns the optimal `w`, the dual prices of the row constraints, and the
/// optimal objective `1'w` (positive since `M' >= 1`).
fn simplex_max(
    game: &MatrixGame,
    scale: f64,
    shift: f64,
) -> Result<(Vec<f64>, Vec<f64>, f64), MatrixGameError> {
    let m = game.rows;
    let k = game.cols;
    let width = k + m + 1; // decision columns, slack columns, RHS
    let rhs = width - 1;
    let eps_obj = 1e-11;
    let eps_pivot = 1e-12;

    // Constraint rows [M' | I | 1], objective row [-1 | 0 | 0].
    let mut tab: Vec<Vec<f64>> = (0..m)
        .map(|a| {
            let mut row = vec![0.0; width];
            for b in 0..k {
                row[b] = game.at(a, b) / scale + shift;
            }
            row[k + a] = 1.0;
            row[rhs] = 1.0;
            row
        })
        .collect();
    let mut obj = vec![0.0; width];
    for entry in obj.iter_mut().take(k) {
        *entry = -1.0;
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    let cap = PIVOT_CAP_FACTOR * (m + k);
    for _ in 0..cap {
        // Bland's rule: lowest-index column with a negative reduced cost.
        let Some(enter) = (0..k + m).find(|&j| obj[j] < -eps_obj) else {
            let objective = obj[rhs];
            if objective <= 0.0 {
                return Err(MatrixGameError::NumericalFailure(
                    "optimal objective is not positive".into(),
                ));
            }
            let mut w = vec![0.0; k];
            for (i, &var) in basis.iter().enumerate() {
                if var < k {
                    w[var] = tab[i][rhs];
                }
            }
            let duals: Vec<f64> = (0..m).map(|a| obj[k + a]).collect();
            return Ok((w, duals, objective));
        };

        // Minimum ratio test; ties broken by lowest basis index (Bland).
        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter] > eps_pivot {
                let ratio = row[rhs] / row[enter];
                let better = match leave {
                    None => true,
                    Some((best_i, best_ratio)) => {
                        ratio < best_ratio - 1e-12
                            || (ratio <= best_ratio + 1e-12 && basis[i] < basis[best_i])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            // Cannot happen: the feasible region {w >= 0, M'w <= 1} is
            // bounded because M' >= 1. Guard anyway.
            return Err(MatrixGameError::NumericalFailure("unbounded LP".into()));
        };

        let pivot = tab[pivot_row][enter];
        for v in tab[pivot_row].iter_mut() {
            *v /= pivot;
        }
        for i in 0..m {
            if i != pivot_row && tab[i][enter].abs() > 0.0 {
                let factor = tab[i][enter];
                for j in 0..width {
                    tab[i][j] -= factor * tab[pivot_row][j];
                }
                tab[i][enter] = 0.0;
            }
        }
        let factor = obj[enter];
        if factor.abs() > 0.0 {
            for j in 0..width {
                obj[j] -= factor * tab[pivot_row][j];
            }
            obj[enter] = 0.0;
        }
        basis[pivot_row] = enter;
    }
    Err(MatrixGameError::NumericalFailure(format!("pivot cap {cap} reached")))
}

/// Clamps tiny negative entries to zero and renormalizes to sum 1. Entries
/// below `-tol` or a sum far from 1 are reported as errors.
fn clean_distribution(p: &mut [f64], tol: f64) -> Result<(), String> {
    for v in p.iter_mut() {
        if *v < 0.0 {
            if *v < -tol {
                return Err(format!("entry {v} below -{tol:e}"));
            }
            *v = 0.0;
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-6 {
        return Err(format!("weights sum to {sum}"));
    }
    for v in p.iter_mut() {
        *v /= sum;
    }
    Ok(())
}
