//! Dynamic-programming operators of stochastic games and their geometry.
//!
//! The operator of a game maps a continuation value `x` to the vector of
//! one-shot game values
//!
//! ```text
//! T_i(x) = val_ab [ r(i, a, b) + sum_l p(l | i, a, b) x_l ] ,
//! ```
//!
//! one coordinate per state. Every such operator is monotone (`x <= y`
//! implies `T(x) <= T(y)`) and additively homogeneous (`T(x + c e) = T(x) +
//! c e` for the all-ones vector `e`), hence nonexpansive in both the sup
//! norm and the Hilbert seminorm `max_i x_i - min_i x_i`. Operators given in
//! closed form are accepted too, after a randomized audit of those two
//! contract properties.
//!
//! Working modulo constants — identifying `x` with `x + c e` — turns the
//! additive eigenproblem into a fixed-point problem; [`canonicalize`]
//! produces the canonical representative with minimum coordinate 0.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{FiniteGame, GameError, StateId};
use crate::matrix_game::{self, MatrixGame, MatrixGameError, DEFAULT_LP_TOL};

/// Tolerance for the randomized monotonicity/homogeneity audit of
/// closed-form operators, and for related single-probe checks.
pub const CONTRACT_TOL: f64 = 1e-7;

/// Number of random probes in the construction-time audit.
const CONTRACT_PROBES: usize = 100;

/// Seed for the construction-time audit (fixed: the audit is part of the
/// constructor's observable behavior and must be reproducible).
const CONTRACT_SEED: u64 = 0xC0117AC7;

/// Tolerance for slice-membership comparisons.
pub const SLICE_TOL: f64 = 1e-9;

/// Value iteration aborts when the un-normalized iterate exceeds this sup
/// norm, which at desk scale can only mean a diverging input.
pub const GROWTH_CAP: f64 = 1e12;

/// Errors from operator evaluation and iteration.
#[derive(Debug, thiserror::Error)]
pub enum OperatorError {
    #[error("expected a vector of dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("non-finite coordinate {value} at position {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("one-shot game in state {state} failed to solve: {source}")]
    CoordinateSolve {
        state: StateId,
        #[source]
        source: MatrixGameError,
    },
    #[error("closed-form operator '{label}' violates the operator contract: {detail}")]
    ContractViolation { label: String, detail: String },
    #[error("iterate exceeded sup-norm cap {cap:e} at step {step}")]
    UnboundedGrowth { step: usize, cap: f64 },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Largest absolute coordinate, 0 for the empty vector.
pub fn sup_norm(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |acc: f64, &v| acc.max(v.abs()))
}

/// Hilbert seminorm `max_i x_i - min_i x_i`; vanishes exactly on constant
/// vectors, and is the metric of the quotient modulo constants.
pub fn hilbert(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    max - min
}

/// A vector modulo additive constants, stored as the canonical
/// representative whose minimum coordinate is exactly 0.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientVector {
    rep: Vec<f64>,
}

impl QuotientVector {
    /// Canonical representative (minimum coordinate 0).
    pub fn rep(&self) -> &[f64] {
        &self.rep
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.len()
    }

    /// Hilbert seminorm of the class; equals the maximum coordinate of the
    /// canonical representative.
    pub fn spread(&self) -> f64 {
        hilbert(&self.rep)
    }

    /// Distance in the quotient metric: Hilbert seminorm of the difference.
    pub fn distance(&self, other: &QuotientVector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let diff: Vec<f64> = self.rep.iter().zip(&other.rep).map(|(a, b)| a - b).collect();
        hilbert(&diff)
    }
}

/// Projects a vector to its equivalence class modulo constants, returning
/// the representative with minimum coordinate 0.
///
/// Panics on non-finite or empty input (caller bug).
pub fn canonicalize(x: &[f64]) -> QuotientVector {
    assert!(!x.is_empty(), "cannot canonicalize an empty vector");
    assert!(x.iter().all(|v| v.is_finite()), "cannot canonicalize a non-finite vector");
    let min = x.iter().copied().fold(f64::INFINITY, f64::min);
    QuotientVector { rep: x.iter().map(|v| v - min).collect() }
}

#[derive(Clone)]
enum OperatorKind {
    /// Backed by a finite game; coordinates are one-shot LP values.
    Game(FiniteGame),
    /// User-supplied formula, audited at construction.
    ClosedForm {
        label: String,
        f: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
    },
    /// `x -> g + base(x)`, for closed-form bases (game-backed handles fold
    /// the shift into the stage payoff instead).
    Shifted { g: Vec<f64>, base: Box<OperatorHandle> },
}

/// An evaluable dynamic-programming operator on `R^n`.
///
/// Handles are cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct OperatorHandle {
    n: usize,
    kind: OperatorKind,
}

impl fmt::Debug for OperatorHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorHandle")
            .field("n", &self.n)
            .field("kind", &self.label())
            .finish()
    }
}

impl OperatorHandle {
    /// Wraps a finite game; evaluation solves one matrix game per state.
    pub fn from_game(game: FiniteGame) -> Self {
        OperatorHandle { n: game.n(), kind: OperatorKind::Game(game) }
    }

    /// Wraps a closed-form operator after auditing monotonicity, additive
    /// homogeneity, and the implied nonexpansiveness on
    /// [`CONTRACT_PROBES`] seeded random probes (tolerance
    /// [`CONTRACT_TOL`]). Formulas failing the audit are rejected.
    pub fn closed_form(
        label: impl Into<String>,
        n: usize,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Result<Self, OperatorError> {
        let handle = OperatorHandle {
            n,
            kind: OperatorKind::ClosedForm { label: label.into(), f: Arc::new(f) },
        };
        handle.verify_contract(CONTRACT_PROBES, CONTRACT_SEED, CONTRACT_TOL)?;
        Ok(handle)
    }

    /// Dimension of the operator's domain.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Short description for reports.
    pub fn label(&self) -> String {
        match &self.kind {
            OperatorKind::Game(game) => format!("game({} states)", game.n()),
            OperatorKind::ClosedForm { label, .. } => format!("closed-form '{label}'"),
            OperatorKind::Shifted { base, .. } => format!("shifted {}", base.label()),
        }
    }

    /// The backing finite game, when there is one. Shifting a game-backed
    /// handle keeps it game-backed, so strategy extraction stays available.
    pub fn game(&self) -> Option<&FiniteGame> {
        match &self.kind {
            OperatorKind::Game(game) => Some(game),
            _ => None,
        }
    }

    /// The operator `x -> g + T(x)` of the payoff-perturbed game. For
    /// game-backed handles the shift is folded into the stage payoffs.
    pub fn shifted(&self, g: &[f64]) -> Result<Self, OperatorError> {
        if g.len() != self.n {
            return Err(OperatorError::Dimension { expected: self.n, got: g.len() });
        }
        match &self.kind {
            OperatorKind::Game(game) => Ok(OperatorHandle::from_game(game.perturb(g)?)),
            OperatorKind::Shifted { g: g0, base } => {
                let combined: Vec<f64> = g0.iter().zip(g).map(|(a, b)| a + b).collect();
                Ok(OperatorHandle { n: self.n, kind: OperatorKind::Shifted { g: combined, base: base.clone() } })
            }
            OperatorKind::ClosedForm { .. } => Ok(OperatorHandle {
                n: self.n,
                kind: OperatorKind::Shifted { g: g.to_vec(), base: Box::new(self.clone()) },
            }),
        }
    }

    /// Applies the operator to `x`.
    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
        check_vector(self.n, x)?;
        match &self.kind {
            OperatorKind::Game(game) => eval_game_operator(game, x),
            OperatorKind::ClosedForm { label, f } => {
                let out = f(x);
                if out.len() != self.n {
                    return Err(OperatorError::ContractViolation {
                        label: label.clone(),
                        detail: format!("returned dimension {}, expected {}", out.len(), self.n),
                    });
                }
                if let Some((i, &v)) = out.iter().enumerate().find(|(_, v)| !v.is_finite()) {
                    return Err(OperatorError::ContractViolation {
                        label: label.clone(),
                        detail: format!("non-finite output {v} at coordinate {i}"),
                    });
                }
                Ok(out)
            }
            OperatorKind::Shifted { g, base } => {
                let mut out = base.eval(x)?;
                for (o, s) in out.iter_mut().zip(g) {
                    *o += s;
                }
                Ok(out)
            }
        }
    }

    /// Audits monotonicity, additive homogeneity, and nonexpansiveness (sup
    /// norm and Hilbert seminorm) on `probes` random inputs drawn from the
    /// given seed. Violations beyond `tol` are errors.
    pub fn verify_contract(&self, probes: usize, seed: u64, tol: f64) -> Result<(), OperatorError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.n;
        let fail = |detail: String| OperatorError::ContractViolation { label: self.label(), detail };
        for probe in 0..probes {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let tx = self.eval(&x)?;

            // x <= y pointwise must give T(x) <= T(y) pointwise.
            let y: Vec<f64> = x.iter().map(|v| v + rng.gen_range(0.0..5.0)).collect();
            let ty = self.eval(&y)?;
            for i in 0..n {
                if tx[i] > ty[i] + tol {
                    return Err(fail(format!(
                        "monotonicity violated on probe {probe}, coordinate {i}: {} > {} + {tol:e}",
                        tx[i], ty[i]
                    )));
                }
            }

            // T(x + alpha e) must equal T(x) + alpha e.
            let alpha = rng.gen_range(-5.0..5.0);
            let xs: Vec<f64> = x.iter().map(|v| v + alpha).collect();
            let txs = self.eval(&xs)?;
            for i in 0..n {
                if (txs[i] - tx[i] - alpha).abs() > tol {
                    return Err(fail(format!(
                        "additive homogeneity violated on probe {probe}, coordinate {i}: shift {alpha}, drift {:e}",
                        (txs[i] - tx[i] - alpha).abs()
                    )));
                }
            }

            // Nonexpansiveness against an unrelated probe point.
            let z: Vec<f64> = (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect();
            let tz = self.eval(&z)?;
            let dxz: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a - b).collect();
            let dtxz: Vec<f64> = tx.iter().zip(&tz).map(|(a, b)| a - b).collect();
            if sup_norm(&dtxz) > sup_norm(&dxz) + 2.0 * tol {
                return Err(fail(format!(
                    "sup-norm expansion on probe {probe}: {} > {}",
                    sup_norm(&dtxz),
                    sup_norm(&dxz)
                )));
            }
            if hilbert(&dtxz) > hilbert(&dxz) + 2.0 * tol {
                return Err(fail(format!(
                    "Hilbert-seminorm expansion on probe {probe}: {} > {}",
                    hilbert(&dtxz),
                    hilbert(&dxz)
                )));
            }
        }
        Ok(())
    }
}

fn check_vector(n: usize, x: &[f64]) -> Result<(), OperatorError> {
    if x.len() != n {
        return Err(OperatorError::Dimension { expected: n, got: x.len() });
    }
    if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(OperatorError::NonFinite { index, value });
    }
    Ok(())
}

/// Evaluates the operator of a finite game at `x`: solves, for each state,
/// the matrix game with entries `r(i, a, b) + sum_l p(l | i, a, b) x_l`.
///
/// The common offset `min x` is split off first (and added back at the end),
/// which keeps the matrix entries at the scale of `hilbert(x)` regardless of
/// how far `x` drifts from the origin.
pub fn eval_game_operator(game: &FiniteGame, x: &[f64]) -> Result<Vec<f64>, OperatorError> {
    check_vector(game.n(), x)?;
    let offset = x.iter().copied().fold(f64::INFINITY, f64::min);
    let centered: Vec<f64> = x.iter().map(|v| v - offset).collect();
    let mut out = Vec::with_capacity(game.n());
    for i in 0..game.n() {
        let state = StateId::new(i);
        let (m, k) = game.num_actions(state);
        let mut entries = Vec::with_capacity(m * k);
        for a in 0..m {
            for b in 0..k {
                let row = game.trans_row(state, a, b);
                let continuation: f64 = row.iter().zip(&centered).map(|(p, v)| p * v).sum();
                entries.push(game.payoff(state, a, b) + continuation);
            }
        }
        let matrix = MatrixGame::new(m, k, entries)
            .map_err(|source| OperatorError::CoordinateSolve { state, source })?;
        // The self-check ceiling scales with the entry magnitude; actual LP
        // gaps are orders of magnitude below it either way.
        let tol = DEFAULT_LP_TOL * matrix.max_entry().abs().max(matrix.min_entry().abs()).max(1.0);
        let sol = matrix_game::solve(&matrix, tol)
            .map_err(|source| OperatorError::CoordinateSolve { state, source })?;
        out.push(sol.value + offset);
    }
    Ok(out)
}

/// One step of the finite-horizon recursion, with the normalized value.
#[derive(Debug, Clone)]
pub struct ValueIterationRecord {
    /// Horizon length.
    pub k: usize,
    /// Normalized value `v^k = T^k(0) / k`.
    pub value: Vec<f64>,
    /// `hilbert(v^k - v^{k-1})`, with `v^0 = 0`.
    pub delta: f64,
}

/// Trace of the finite-horizon values `v^k`.
#[derive(Debug, Clone, Default)]
pub struct ValueIterationTrace {
    pub records: Vec<ValueIterationRecord>,
}

impl ValueIterationTrace {
    /// Record of the longest horizon computed.
    pub fn last(&self) -> Option<&ValueIterationRecord> {
        self.records.last()
    }
}

/// Runs the finite-horizon recursion `w^{k} = T(w^{k-1})`, `w^0 = 0`,
/// recording `v^k = w^k / k` for `k = 1..=steps`. In an ergodic game `v^k`
/// converges to `lambda e` at rate `2 hilbert(u) / k`.
///
/// Aborts with [`OperatorError::UnboundedGrowth`] if the un-normalized
/// iterate passes [`GROWTH_CAP`].
pub fn value_iteration(op: &OperatorHandle, steps: usize) -> Result<ValueIterationTrace, OperatorError> {
    let n = op.dim();
    let mut w = vec![0.0; n];
    let mut prev_v = vec![0.0; n];
    let mut trace = ValueIterationTrace::default();
    for k in 1..=steps {
        w = op.eval(&w)?;
        if sup_norm(&w) > GROWTH_CAP {
            return Err(OperatorError::UnboundedGrowth { step: k, cap: GROWTH_CAP });
        }
        let value: Vec<f64> = w.iter().map(|v| v / k as f64).collect();
        let diff: Vec<f64> = value.iter().zip(&prev_v).map(|(a, b)| a - b).collect();
        trace.records.push(ValueIterationRecord { k, value: value.clone(), delta: hilbert(&diff) });
        prev_v = value;
    }
    Ok(trace)
}

/// Whether `alpha e + x <= T(x) <= beta e + x` within [`SLICE_TOL`]: the
/// slice membership test. Bounded slices in the Hilbert seminorm, for every
/// `alpha <= beta`, are equivalent to ergodicity.
pub fn in_slice(op: &OperatorHandle, x: &[f64], alpha: f64, beta: f64) -> Result<bool, OperatorError> {
    let tx = op.eval(x)?;
    Ok(tx
        .iter()
        .zip(x)
        .all(|(t, v)| t - v >= alpha - SLICE_TOL && t - v <= beta + SLICE_TOL))
}

/// Whether `alpha e + x <= T(x)` within [`SLICE_TOL`]: membership in the
/// lower half-slice (no upper constraint).
pub fn in_lower_slice(op: &OperatorHandle, x: &[f64], alpha: f64) -> Result<bool, OperatorError> {
    let tx = op.eval(x)?;
    Ok(tx.iter().zip(x).all(|(t, v)| t - v >= alpha - SLICE_TOL))
}

/// One sample of the rescaled operator along a ray.
#[derive(Debug, Clone)]
pub struct RecessionSample {
    pub rho: f64,
    /// `T(rho x) / rho`.
    pub scaled: Vec<f64>,
}

/// Evaluates `T(rho x) / rho` for each `rho` in `rhos`. As `rho` grows this
/// approaches the recession operator, which governs the game's behavior at
/// infinity; comparing successive samples shows how fast the limit sets in.
///
/// `rhos` must be positive and strictly increasing.
pub fn recession_probe(
    op: &OperatorHandle,
    x: &[f64],
    rhos: &[f64],
) -> Result<Vec<RecessionSample>, OperatorError> {
    if rhos.is_empty() || rhos[0] <= 0.0 || rhos.windows(2).any(|w| w[0] >= w[1]) {
        return Err(OperatorError::InvalidArgument(
            "rho schedule must be positive and strictly increasing".into(),
        ));
    }
    let mut samples = Vec::with_capacity(rhos.len());
    for &rho in rhos {
        let scaled_in: Vec<f64> = x.iter().map(|v| v * rho).collect();
        let out = op.eval(&scaled_in)?;
        samples.push(RecessionSample { rho, scaled: out.iter().map(|v| v / rho).collect() });
    }
    Ok(samples)
}

/// Ready-made operators and games used throughout the test suites and
/// examples: three minimal two-state operators that mark the boundary of
/// ergodicity, a closed-form operator with a transcendental eigenvector, and
/// a three-state game whose dominion structure is fully known.
pub mod fixtures {
    use super::*;

    /// The identity operator on two coordinates, as a game: two isolated
    /// self-loop states with zero payoff. Every vector is a fixed point, so
    /// a payoff perturbation `g` is solvable only when `g` is constant —
    /// the standard example of a non-ergodic game without any proper
    /// dominion pair... until payoffs break the tie between components.
    pub fn t_square() -> OperatorHandle {
        OperatorHandle::closed_form("identity", 2, |x| x.to_vec()).expect("identity satisfies the contract")
    }

    /// Game form of [`t_square`]: two absorbing states, zero payoff.
    pub fn t_square_game() -> FiniteGame {
        deterministic_two_state([0, 1])
    }

    /// The swap operator `(x_1, x_2) -> (x_2, x_1)`: a two-cycle. Ergodic;
    /// for payoff `g` the invariant per-stage value is the average
    /// `(g_1 + g_2) / 2` and the relative value splits the difference.
    pub fn t_circle() -> OperatorHandle {
        OperatorHandle::closed_form("swap", 2, |x| vec![x[1], x[0]]).expect("swap satisfies the contract")
    }

    /// Game form of [`t_circle`]: deterministic two-cycle, zero payoff.
    pub fn t_circle_game() -> FiniteGame {
        deterministic_two_state([1, 0])
    }

    /// `(x_1, x_2) -> (max(x_1, x_2), min(x_1, x_2))`: in state 1 the
    /// maximizer picks the next state, in state 2 the minimizer does. Not
    /// ergodic — each player can lock the play into its preferred state.
    pub fn t_triangle() -> OperatorHandle {
        OperatorHandle::closed_form("max-min", 2, |x| vec![x[0].max(x[1]), x[0].min(x[1])])
            .expect("max-min satisfies the contract")
    }

    /// Game form of [`t_triangle`]: state 1 gives MAX a choice between the
    /// two states, state 2 gives MIN the same choice; zero payoff.
    pub fn t_triangle_game() -> FiniteGame {
        let go = |target: usize| {
            let mut row = vec![0.0, 0.0];
            row[target] = 1.0;
            row
        };
        FiniteGame::from_raw(crate::game::RawGame {
            n: 2,
            actions_max: vec![vec!["to-1".into(), "to-2".into()], vec!["wait".into()]],
            actions_min: vec![vec!["wait".into()], vec!["to-1".into(), "to-2".into()]],
            payoff: vec![vec![vec![0.0], vec![0.0]], vec![vec![0.0, 0.0]]],
            trans: vec![
                vec![vec![go(0)], vec![go(1)]],
                vec![vec![go(0), go(1)]],
            ],
        })
        .expect("fixture game is valid")
    }

    /// The scalar kink `h(z) = 1 - ln(2 - z)` for `z <= 1`, `h(z) = z`
    /// beyond: increasing, continuous, slope in `[0, 1]` below the kink.
    pub fn log_transfer(z: f64) -> f64 {
        if z <= 1.0 {
            1.0 - (2.0 - z).ln()
        } else {
            z
        }
    }

    /// A two-state closed-form operator,
    /// `T(x) = (x_1 + h(x_2 - x_1), x_2 - h(x_2 - x_1))` with
    /// [`log_transfer`] `h`. Its additive eigenproblem has the exact
    /// solution `lambda = 0`, `u_2 - u_1 = 2 - e`, making it a sharp probe
    /// for solver accuracy away from piecewise-linear territory.
    pub fn log_game() -> OperatorHandle {
        OperatorHandle::closed_form("log-transfer", 2, |x| {
            let t = log_transfer(x[1] - x[0]);
            vec![x[0] + t, x[1] - t]
        })
        .expect("log-transfer satisfies the contract")
    }

    /// Three-state game on an action grid: states 1 and 2 are mirror images
    /// where each player tries to pull the play toward its favored state,
    /// and state 3 absorbs with zero payoff. `gamma` in `(0, 1)` limits how
    /// firmly an action can pin the next state.
    ///
    /// In state 1 the payoff is `a b / (a^3 + b^3)` (0 at `(0,0)`), in
    /// state 2 its negative, in state 3 zero; the transition rows are
    /// `(gamma a, b (1 - gamma a), (1 - b)(1 - gamma a))` from state 1 and
    /// `(gamma b, a (1 - gamma b), (1 - a)(1 - gamma b))` from state 2.
    ///
    /// MAX's dominions are exactly `{3}` and `{1,2,3}`; MIN's are `{3}`,
    /// `{1,3}`, `{2,3}`, `{1,2,3}`. No pair of disjoint dominions exists,
    /// so the game is ergodic.
    pub fn gamma_game(gamma: f64, grid: &[f64]) -> FiniteGame {
        assert!(gamma > 0.0 && gamma < 1.0, "gamma must lie in (0, 1)");
        assert!(
            !grid.is_empty() && grid.iter().all(|v| (0.0..=1.0).contains(v)),
            "action grid must be nonempty within [0, 1]"
        );
        let labels: Vec<String> = grid.iter().map(|v| format!("{v}")).collect();
        let m = grid.len();
        let r = |a: f64, b: f64| if a == 0.0 && b == 0.0 { 0.0 } else { a * b / (a.powi(3) + b.powi(3)) };
        let mut payoff = vec![vec![vec![0.0; m]; m]; 3];
        let mut trans = vec![vec![vec![vec![0.0; 3]; m]; m]; 3];
        for (ai, &a) in grid.iter().enumerate() {
            for (bi, &b) in grid.iter().enumerate() {
                payoff[0][ai][bi] = r(a, b);
                payoff[1][ai][bi] = -r(a, b);
                trans[0][ai][bi] = vec![gamma * a, b * (1.0 - gamma * a), (1.0 - b) * (1.0 - gamma * a)];
                trans[1][ai][bi] = vec![gamma * b, a * (1.0 - gamma * b), (1.0 - a) * (1.0 - gamma * b)];
                trans[2][ai][bi] = vec![0.0, 0.0, 1.0];
            }
        }
        FiniteGame::from_raw(crate::game::RawGame {
            n: 3,
            actions_max: vec![labels.clone(); 3],
            actions_min: vec![labels; 3],
            payoff,
            trans,
        })
        .expect("fixture game is valid")
    }

    fn deterministic_two_state(targets: [usize; 2]) -> FiniteGame {
        let trans: Vec<_> = targets
            .iter()
            .map(|&t| {
                let mut row = vec![0.0, 0.0];
                row[t] = 1.0;
                vec![vec![row]]
            })
            .collect();
        FiniteGame::from_raw(crate::game::RawGame {
            n: 2,
            actions_max: vec![vec!["wait".into()], vec!["wait".into()]],
            actions_min: vec![vec!["wait".into()], vec!["wait".into()]],
            payoff: vec![vec![vec![0.0]], vec![vec![0.0]]],
            trans,
        })
        .expect("fixture game is valid")
    }
}
