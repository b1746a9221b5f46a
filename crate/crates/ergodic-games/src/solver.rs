//! Solving the additive eigenproblem `T(u) = lambda e + u` and probing its
//! solvability and uniqueness.
//!
//! The pair `(lambda, u)` — the invariant per-stage value and the relative
//! value — is computed by a damped fixed-point iteration in the quotient
//! space modulo constants:
//!
//! ```text
//! u <- canonicalize( (1 - theta) u + theta T(u) ) .
//! ```
//!
//! The averaged map is nonexpansive in the Hilbert seminorm, so the residual
//! `hilbert(T(u) - u)` never increases along the iteration; when it reaches
//! the tolerance, `lambda` is read off as the midpoint of `T(u) - u`. When
//! the equation has no solution — the hallmark of a non-ergodic game under a
//! bad payoff perturbation — the iteration cannot converge and reports
//! [`SolveError::NoConvergence`], carrying the best iterate found. That
//! failure is evidence, not a verdict: the combinatorial dominion analysis
//! is the authority on ergodicity.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::game::{FiniteGame, StateId, StateSet};
use crate::matrix_game::{self, MatrixGame, MatrixGameError, DEFAULT_LP_TOL};
use crate::shapley::{canonicalize, hilbert, sup_norm, OperatorError, OperatorHandle, QuotientVector};

/// Tuning of the damped fixed-point iteration.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Convergence threshold on `hilbert(T(u) - u)`.
    pub tol: f64,
    /// Iteration budget.
    pub max_iter: usize,
    /// Damping factor in `(0, 1]`; `1` is the undamped iteration, which can
    /// cycle (the plain two-state swap oscillates forever from `(1, 0)`).
    pub theta: f64,
    /// Record the residual at every iteration.
    pub record_trace: bool,
    /// Optional early exit when the residual stops improving; `None` runs
    /// the full budget.
    pub stall: Option<StallCheck>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-8, max_iter: 200_000, theta: 0.5, record_trace: true, stall: None }
    }
}

/// Early-exit rule for plateaued residuals. Because the residual is
/// nonincreasing, a window with (relatively) negligible progress at a
/// residual far above tolerance reliably indicates an unsolvable instance
/// or hopelessly slow mixing.
#[derive(Debug, Clone)]
pub struct StallCheck {
    /// Compare residuals this many iterations apart.
    pub window: usize,
    /// Declare a stall when the window improved by less than this fraction
    /// of the current residual (and the residual is still above `10 * tol`).
    pub min_relative_progress: f64,
}

impl Default for StallCheck {
    fn default() -> Self {
        StallCheck { window: 500, min_relative_progress: 1e-4 }
    }
}

/// A solution (or best attempt) of `T(u) = lambda e + u`.
#[derive(Debug, Clone)]
pub struct ErgodicSolution {
    /// Invariant per-stage value; the midpoint `(max + min) / 2` of
    /// `T(u) - u`, which minimizes the sup-norm residual for the given `u`.
    pub lambda: f64,
    /// Relative value, canonical representative (minimum coordinate 0).
    pub u: QuotientVector,
    /// `hilbert(T(u) - u)` at the returned `u`.
    pub residual: f64,
    /// Operator evaluations performed.
    pub iterations: usize,
    /// Residual after each evaluation, when recording was requested.
    pub trace: Option<Vec<f64>>,
    /// Largest observed increase of the residual between consecutive
    /// iterations; theory says none beyond rounding, and the test suites
    /// hold this to 1e-12.
    pub max_residual_increase: f64,
}

impl ErgodicSolution {
    /// Sup-norm residual of the eigenvalue equation,
    /// `||T(u) - lambda e - u||_inf = residual / 2`.
    pub fn sup_residual(&self) -> f64 {
        self.residual / 2.0
    }
}

/// Stationary mixed strategies extracted from a relative value.
#[derive(Debug, Clone)]
pub struct StrategyPair {
    /// `sigma[i]`: MAX's mixed action in state `i`; a probability vector.
    pub sigma: Vec<Vec<f64>>,
    /// `tau[i]`: MIN's mixed action in state `i`; a probability vector.
    pub tau: Vec<Vec<f64>>,
    /// Optimality slack these strategies are certified for.
    pub epsilon: f64,
    /// Per-state certificates backing `epsilon`.
    pub guarantees: Vec<StateGuarantee>,
}

/// One-shot guarantee certificate for one state: `sigma` secures at least
/// `lower` and `tau` concedes at most `upper` in the auxiliary game around
/// the relative value, with `value` in between.
#[derive(Debug, Clone)]
pub struct StateGuarantee {
    pub state: StateId,
    /// Value of the one-shot game `r(i, ., .) + sum_l p(l | i, ., .) u_l`.
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Errors from solving and probing.
#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error(
        "no convergence after {iterations} iterations: residual {residual:e} (tolerance {tol:e}); \
         the instance may be unsolvable (non-ergodic game) or slow-mixing — \
         consult the dominion analysis"
    )]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
        /// Best iterate encountered, usable as a diagnostic.
        best: Box<ErgodicSolution>,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("strategy certificate failed in state {state}: {detail}")]
    CertificateViolation { state: StateId, detail: String },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Matrix(#[from] MatrixGameError),
}

fn validate_start(op: &OperatorHandle, start: &[f64]) -> Result<(), SolveError> {
    if start.len() != op.dim() {
        return Err(SolveError::Operator(OperatorError::Dimension {
            expected: op.dim(),
            got: start.len(),
        }));
    }
    if let Some((index, &value)) = start.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(SolveError::Operator(OperatorError::NonFinite { index, value }));
    }
    Ok(())
}

/// Solves `T(u) = lambda e + u` by the damped iteration, starting from the
/// origin of the quotient space.
pub fn solve_ergodic(op: &OperatorHandle, opts: &SolveOptions) -> Result<ErgodicSolution, SolveError> {
    solve_ergodic_from(op, &vec![0.0; op.dim()], opts)
}

/// [`solve_ergodic`] from an explicit starting point (canonicalized first).
pub fn solve_ergodic_from(
    op: &OperatorHandle,
    start: &[f64],
    opts: &SolveOptions,
) -> Result<ErgodicSolution, SolveError> {
    if !(opts.theta > 0.0 && opts.theta <= 1.0) {
        return Err(SolveError::InvalidArgument(format!(
            "damping factor {} outside (0, 1]",
            opts.theta
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(SolveError::InvalidArgument(format!("tolerance {} must be positive", opts.tol)));
    }
    validate_start(op, start)?;

    let theta = opts.theta;
    let mut u = canonicalize(start).into_vec();
    let mut trace: Option<Vec<f64>> = opts.record_trace.then(Vec::new);
    let mut best: Option<(f64, Vec<f64>, Vec<f64>)> = None;
    let mut prev_residual = f64::INFINITY;
    let mut max_increase: f64 = 0.0;
    let mut stall_mark: Option<(usize, f64)> = None;
    let mut iterations = 0;

    while iterations < opts.max_iter {
        let tu = op.eval(&u)?;
        iterations += 1;
        let diff: Vec<f64> = tu.iter().zip(&u).map(|(t, v)| t - v).collect();
        let residual = hilbert(&diff);
        if residual > prev_residual {
            max_increase = max_increase.max(residual - prev_residual);
        }
        prev_residual = residual;
        if let Some(trace) = trace.as_mut() {
            trace.push(residual);
        }
        if best.as_ref().is_none_or(|(r, _, _)| residual < *r) {
            best = Some((residual, u.clone(), diff.clone()));
        }
        if residual <= opts.tol {
            return Ok(assemble(u, &diff, residual, iterations, trace, max_increase));
        }
        if let Some(stall) = &opts.stall {
            match stall_mark {
                Some((mark_iter, mark_residual)) if iterations - mark_iter >= stall.window => {
                    let progress = mark_residual - residual;
                    if progress < residual * stall.min_relative_progress
                        && residual > 10.0 * opts.tol
                    {
                        break;
                    }
                    stall_mark = Some((iterations, residual));
                }
                None => stall_mark = Some((iterations, residual)),
                _ => {}
            }
        }
        for (ui, ti) in u.iter_mut().zip(&tu) {
            *ui = (1.0 - theta) * *ui + theta * ti;
        }
        u = canonicalize(&u).into_vec();
    }

    let (residual, bu, bdiff) = best.expect("at least one iteration ran");
    Err(SolveError::NoConvergence {
        iterations,
        residual,
        tol: opts.tol,
        best: Box::new(assemble(bu, &bdiff, residual, iterations, trace, max_increase)),
    })
}

fn assemble(
    u: Vec<f64>,
    diff: &[f64],
    residual: f64,
    iterations: usize,
    trace: Option<Vec<f64>>,
    max_residual_increase: f64,
) -> ErgodicSolution {
    let max = diff.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = diff.iter().copied().fold(f64::INFINITY, f64::min);
    ErgodicSolution {
        lambda: 0.5 * (max + min),
        u: canonicalize(&u),
        residual,
        iterations,
        trace,
        max_residual_increase,
    }
}

/// Verifies `||T(u) - lambda e - u||_inf <= tol`.
pub fn check_solution(
    op: &OperatorHandle,
    lambda: f64,
    u: &[f64],
    tol: f64,
) -> Result<bool, SolveError> {
    validate_start(op, u)?;
    let tu = op.eval(u)?;
    let err: Vec<f64> = tu.iter().zip(u).map(|(t, v)| t - lambda - v).collect();
    Ok(sup_norm(&err) <= tol)
}

/// Extracts stationary mixed strategies from a relative value `u`: for each
/// state, the optimal strategies of the one-shot game around `u`. The
/// declared slack is `max(epsilon, 2 * lp_tol)`, and the returned
/// certificates are verified against it before returning.
pub fn extract_strategies(
    game: &FiniteGame,
    u: &[f64],
    epsilon: f64,
) -> Result<StrategyPair, SolveError> {
    if u.len() != game.n() {
        return Err(SolveError::InvalidArgument(format!(
            "relative value has length {}, game has {} states",
            u.len(),
            game.n()
        )));
    }
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(SolveError::InvalidArgument(format!("epsilon {epsilon} must be finite and >= 0")));
    }
    let epsilon = epsilon.max(2.0 * DEFAULT_LP_TOL);
    let mut sigma = Vec::with_capacity(game.n());
    let mut tau = Vec::with_capacity(game.n());
    let mut guarantees = Vec::with_capacity(game.n());
    for i in 0..game.n() {
        let state = StateId::new(i);
        let (m, k) = game.num_actions(state);
        let mut entries = Vec::with_capacity(m * k);
        for a in 0..m {
            for b in 0..k {
                let row = game.trans_row(state, a, b);
                let continuation: f64 = row.iter().zip(u).map(|(p, v)| p * v).sum();
                entries.push(game.payoff(state, a, b) + continuation);
            }
        }
        let matrix = MatrixGame::new(m, k, entries)?;
        let tol = DEFAULT_LP_TOL * matrix.max_entry().abs().max(matrix.min_entry().abs()).max(1.0);
        let sol = matrix_game::solve(&matrix, tol)?;
        if sol.lower < sol.value - epsilon || sol.upper > sol.value + epsilon {
            return Err(SolveError::CertificateViolation {
                state,
                detail: format!(
                    "guarantees [{}, {}] exceed slack {epsilon:e} around value {}",
                    sol.lower, sol.upper, sol.value
                ),
            });
        }
        guarantees.push(StateGuarantee { state, value: sol.value, lower: sol.lower, upper: sol.upper });
        sigma.push(sol.x);
        tau.push(sol.y);
    }
    Ok(StrategyPair { sigma, tau, epsilon, guarantees })
}

/// Outcome of one perturbation trial.
#[derive(Debug, Clone)]
pub enum TrialOutcome {
    /// The damped iteration converged.
    Solved { lambda: f64, residual: f64, iterations: usize },
    /// The iteration exhausted its budget (or stalled); best residual shown.
    Unsolved { residual: f64, iterations: usize },
    /// An infrastructure failure (LP breakdown), distinct from honest
    /// non-convergence.
    Failed { message: String },
}

/// One perturbation draw and what happened on it.
#[derive(Debug, Clone)]
pub struct ProbeTrial {
    pub g: Vec<f64>,
    pub outcome: TrialOutcome,
}

/// Aggregate result of [`solvability_probe`].
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub seed: u64,
    /// Fraction of trials that solved.
    pub fraction_solvable: f64,
    pub trials: Vec<ProbeTrial>,
}

/// Draws `num_trials` payoff perturbations `g` uniformly from `[-1, 1]^n`
/// and attempts to solve each perturbed eigenproblem. On an ergodic game
/// every draw is solvable; an unsolvable draw is a certificate of
/// non-ergodicity (up to iteration budget). Failures are data, not errors.
///
/// Trials run in parallel on independent RNG streams of the master seed;
/// results are deterministic for a given seed regardless of thread count.
pub fn solvability_probe(
    op: &OperatorHandle,
    num_trials: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<ProbeReport, SolveError> {
    let n = op.dim();
    // Probes never need per-iteration traces; drop them to keep reports lean.
    let solve_opts = SolveOptions { record_trace: false, ..opts.clone() };
    let trials: Vec<ProbeTrial> = (0..num_trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64 + 1);
            let g: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
            let outcome = run_trial(op, &g, &solve_opts);
            ProbeTrial { g, outcome }
        })
        .collect();
    let solved = trials.iter().filter(|t| matches!(t.outcome, TrialOutcome::Solved { .. })).count();
    let fraction_solvable = if trials.is_empty() { 1.0 } else { solved as f64 / trials.len() as f64 };
    Ok(ProbeReport { seed, fraction_solvable, trials })
}

fn run_trial(op: &OperatorHandle, g: &[f64], opts: &SolveOptions) -> TrialOutcome {
    let shifted = match op.shifted(g) {
        Ok(shifted) => shifted,
        Err(e) => return TrialOutcome::Failed { message: e.to_string() },
    };
    match solve_ergodic(&shifted, opts) {
        Ok(sol) => TrialOutcome::Solved {
            lambda: sol.lambda,
            residual: sol.residual,
            iterations: sol.iterations,
        },
        Err(SolveError::NoConvergence { residual, iterations, .. }) => {
            TrialOutcome::Unsolved { residual, iterations }
        }
        Err(e) => TrialOutcome::Failed { message: e.to_string() },
    }
}

/// An unsolvable perturbation found by [`targeted_unsolvable_search`].
#[derive(Debug, Clone)]
pub struct TargetedHit {
    pub g: Vec<f64>,
    pub draw_index: usize,
    /// Best residual the solver reached on it.
    pub residual: f64,
}

/// Result of the witness-guided hunt for an unsolvable perturbation.
#[derive(Debug, Clone)]
pub struct TargetedSearch {
    pub attempted: usize,
    pub found: Option<TargetedHit>,
}

/// Hunts for an unsolvable perturbation using a disjoint-dominion witness
/// `(d_max, d_min)`: pushes the payoff up on the MAX dominion and down on
/// the MIN dominion by more than the operator's own payoff spread, then
/// jitters. With each player able to confine the play to its favored
/// region, such perturbations force incompatible per-stage values and the
/// eigenproblem has no solution; the first draw the solver fails on is
/// returned.
pub fn targeted_unsolvable_search(
    op: &OperatorHandle,
    witness: &(StateSet, StateSet),
    max_draws: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<TargetedSearch, SolveError> {
    let n = op.dim();
    let (d_max, d_min) = witness;
    if d_max.is_empty() || d_min.is_empty() || !d_max.is_disjoint(d_min) {
        return Err(SolveError::InvalidArgument(
            "witness must be a pair of disjoint nonempty state sets".into(),
        ));
    }
    if d_max.iter().chain(d_min.iter()).any(|&i| i >= n) {
        return Err(SolveError::InvalidArgument("witness state out of range".into()));
    }
    // A shift separating the two dominions breaks solvability once the
    // separation exceeds the gap between what each player can guarantee
    // per stage while confined to its own dominion. That gap is bounded
    // by the payoff range but can exceed the spread of the one-shot
    // values (the confining action may pay far worse than the state's
    // value), so the draws escalate geometrically: blocks of eight share
    // a magnitude, and each block doubles it.
    let spread = hilbert(&op.eval(&vec![0.0; n])?);
    let c = spread + 1.0;
    let solve_opts = SolveOptions { record_trace: false, ..opts.clone() };
    let mut attempted = 0;
    for draw_index in 0..max_draws {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(draw_index as u64 + 1);
        let magnitude = c * f64::powi(2.0, (draw_index / 8) as i32);
        let jitter = if draw_index % 8 == 0 { 0.0 } else { 0.5 * magnitude };
        let g: Vec<f64> = (0..n)
            .map(|i| {
                if d_max.contains(&i) {
                    magnitude + rng.gen_range(0.0..=1.0) * jitter
                } else if d_min.contains(&i) {
                    -magnitude - rng.gen_range(0.0..=1.0) * jitter
                } else {
                    rng.gen_range(-0.5..=0.5) * magnitude
                }
            })
            .collect();
        attempted += 1;
        if let TrialOutcome::Unsolved { residual, .. } = run_trial(op, &g, &solve_opts) {
            return Ok(TargetedSearch {
                attempted,
                found: Some(TargetedHit { g, draw_index, residual }),
            });
        }
    }
    Ok(TargetedSearch { attempted, found: None })
}

/// Result of the multi-start uniqueness probe.
#[derive(Debug, Clone)]
pub enum UniquenessOutcome {
    /// All starts converged to one equivalence class (no second solution
    /// found — a one-sided, heuristic certificate).
    Unique { lambda: f64, u: QuotientVector },
    /// At least two solutions at quotient distance beyond the clustering
    /// radius; distinct canonical representatives listed in discovery order.
    MultipleFound { solutions: Vec<QuotientVector> },
}

/// Solves `g + T` from `num_starts` random starting points (uniform in
/// `[-5, 5]^n`, seeded, parallel) and clusters the canonical solutions at
/// radius `100 * tol` in the quotient metric. Non-convergence from any
/// start propagates as an error, since the probe is only meaningful on
/// solvable instances.
pub fn uniqueness_probe(
    op: &OperatorHandle,
    g: &[f64],
    num_starts: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<UniquenessOutcome, SolveError> {
    if num_starts == 0 {
        return Err(SolveError::InvalidArgument("need at least one start".into()));
    }
    let shifted = op.shifted(g)?;
    let n = op.dim();
    let solve_opts = SolveOptions { record_trace: false, ..opts.clone() };
    let solutions: Vec<ErgodicSolution> = (0..num_starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s as u64 + 1);
            let start: Vec<f64> = (0..n).map(|_| rng.gen_range(-5.0..=5.0)).collect();
            solve_ergodic_from(&shifted, &start, &solve_opts)
        })
        .collect::<Result<_, _>>()?;

    let radius = 100.0 * opts.tol;
    let mut representatives: Vec<QuotientVector> = Vec::new();
    for sol in &solutions {
        if representatives.iter().all(|rep| rep.distance(&sol.u) > radius) {
            representatives.push(sol.u.clone());
        }
    }
    if representatives.len() == 1 {
        Ok(UniquenessOutcome::Unique {
            lambda: solutions[0].lambda,
            u: representatives.into_iter().next().expect("one representative"),
        })
    } else {
        Ok(UniquenessOutcome::MultipleFound { solutions: representatives })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapley::fixtures::{log_game, t_circle, t_circle_game, t_square, t_triangle};

    #[test]
    fn perturbed_two_cycle_solves_exactly() {
        let op = t_circle().shifted(&[1.0, 0.0]).unwrap();
        let sol = solve_ergodic(&op, &SolveOptions::default()).unwrap();
        assert!((sol.lambda - 0.5).abs() <= 1e-9, "lambda {}", sol.lambda);
        let u = sol.u.rep();
        assert!((u[0] - u[1] - 0.5).abs() <= 1e-8, "u {:?}", u);
        assert!(sol.residual <= 1e-8);
        assert!(sol.iterations <= 10_000);
        assert!(check_solution(&op, sol.lambda, u, 1e-8).unwrap());
    }

    #[test]
    fn log_operator_solves_to_the_transcendental_answer() {
        let sol = solve_ergodic(&log_game(), &SolveOptions::default()).unwrap();
        assert!(sol.lambda.abs() <= 1e-7, "lambda {}", sol.lambda);
        let u = sol.u.rep();
        let expected = 2.0 - std::f64::consts::E;
        assert!(((u[1] - u[0]) - expected).abs() <= 1e-6, "u2 - u1 = {}", u[1] - u[0]);
    }

    #[test]
    fn ordered_perturbation_of_max_min_solves() {
        let op = t_triangle().shifted(&[-1.0, 0.0]).unwrap();
        let sol = solve_ergodic(&op, &SolveOptions::default()).unwrap();
        assert!((sol.lambda + 0.5).abs() <= 1e-7);
        let u = sol.u.rep();
        assert!((u[0] - u[1] + 0.5).abs() <= 1e-6, "u {:?}", u);
    }

    #[test]
    fn reversed_perturbation_of_max_min_cannot_solve() {
        let op = t_triangle().shifted(&[1.0, 0.0]).unwrap();
        let opts = SolveOptions { max_iter: 3000, ..SolveOptions::default() };
        match solve_ergodic(&op, &opts) {
            Err(SolveError::NoConvergence { residual, best, .. }) => {
                assert!(residual > 1e-8);
                assert!(best.residual >= 0.9, "residual should stay near 1, got {}", best.residual);
            }
            other => panic!("expected no convergence, got {other:?}"),
        }
    }

    #[test]
    fn stall_detection_exits_early() {
        let op = t_triangle().shifted(&[1.0, 0.0]).unwrap();
        let opts = SolveOptions {
            stall: Some(StallCheck::default()),
            ..SolveOptions::default()
        };
        match solve_ergodic(&op, &opts) {
            Err(SolveError::NoConvergence { iterations, .. }) => {
                assert!(iterations < 5_000, "stall should fire well under the budget, ran {iterations}");
            }
            other => panic!("expected no convergence, got {other:?}"),
        }
    }

    #[test]
    fn residual_never_increases() {
        for op in [
            t_circle().shifted(&[1.0, 0.0]).unwrap(),
            log_game(),
            // Solvable shift of the order operator: needs g[0] <= g[1].
            t_triangle().shifted(&[-0.2, 0.3]).unwrap(),
        ] {
            let sol = solve_ergodic(&op, &SolveOptions::default()).unwrap();
            assert!(sol.max_residual_increase <= 1e-12, "{}", sol.max_residual_increase);
        }
    }

    #[test]
    fn check_solution_distinguishes() {
        let op = t_circle();
        assert!(check_solution(&op, 0.0, &[0.0, 0.0], 1e-10).unwrap());
        assert!(!check_solution(&op, 1.0, &[0.0, 0.0], 1e-10).unwrap());
        let shifted = op.shifted(&[1.0, 0.0]).unwrap();
        assert!(check_solution(&shifted, 0.5, &[0.5, 0.0], 1e-10).unwrap());
    }

    #[test]
    fn strategies_from_singleton_actions_are_pure() {
        let game = t_circle_game().perturb(&[1.0, 0.0]).unwrap();
        let pair = extract_strategies(&game, &[0.5, 0.0], 1e-8).unwrap();
        assert_eq!(pair.sigma, vec![vec![1.0], vec![1.0]]);
        assert_eq!(pair.tau, vec![vec![1.0], vec![1.0]]);
        assert!(pair.epsilon >= 2.0 * DEFAULT_LP_TOL);
        // One-shot values around u = (0.5, 0) reproduce lambda + u.
        assert!((pair.guarantees[0].value - 1.0).abs() <= 1e-9);
        assert!((pair.guarantees[1].value - 0.5).abs() <= 1e-9);
    }

    #[test]
    fn solvability_probe_clears_the_two_cycle() {
        let report = solvability_probe(&t_circle(), 20, 42, &SolveOptions::default()).unwrap();
        assert_eq!(report.fraction_solvable, 1.0, "trials: {:?}", report.trials.len());
        assert_eq!(report.trials.len(), 20);
    }

    #[test]
    fn solvability_probe_fails_on_the_identity() {
        // Almost every draw has g1 != g2, which the identity cannot absorb.
        let opts = SolveOptions { max_iter: 2000, stall: Some(StallCheck::default()), ..Default::default() };
        let report = solvability_probe(&t_square(), 10, 7, &opts).unwrap();
        assert_eq!(report.fraction_solvable, 0.0);
    }

    #[test]
    fn probe_is_deterministic_for_a_seed() {
        let opts = SolveOptions { max_iter: 2000, stall: Some(StallCheck::default()), ..Default::default() };
        let a = solvability_probe(&t_triangle(), 12, 99, &opts).unwrap();
        let b = solvability_probe(&t_triangle(), 12, 99, &opts).unwrap();
        let gs: Vec<&Vec<f64>> = a.trials.iter().map(|t| &t.g).collect();
        let hs: Vec<&Vec<f64>> = b.trials.iter().map(|t| &t.g).collect();
        assert_eq!(gs, hs);
        assert_eq!(a.fraction_solvable, b.fraction_solvable);
    }

    #[test]
    fn targeted_search_finds_unsolvable_perturbations() {
        let witness = (StateSet::from([0]), StateSet::from([1]));
        let opts = SolveOptions { max_iter: 2000, stall: Some(StallCheck::default()), ..Default::default() };
        let search = targeted_unsolvable_search(&t_triangle(), &witness, 10, 3, &opts).unwrap();
        let hit = search.found.expect("separated perturbation must be unsolvable");
        assert_eq!(hit.draw_index, 0);
        assert!(hit.g[0] > hit.g[1]);
    }

    #[test]
    fn targeted_search_validates_the_witness() {
        let witness = (StateSet::from([0]), StateSet::from([0]));
        let result = targeted_unsolvable_search(&t_triangle(), &witness, 5, 0, &SolveOptions::default());
        assert!(matches!(result, Err(SolveError::InvalidArgument(_))));
    }

    #[test]
    fn uniqueness_probe_separates_the_fixtures() {
        let opts = SolveOptions::default();
        match uniqueness_probe(&t_circle(), &[1.0, 0.0], 10, 5, &opts).unwrap() {
            UniquenessOutcome::Unique { lambda, u } => {
                assert!((lambda - 0.5).abs() <= 1e-7);
                assert!((u.rep()[0] - u.rep()[1] - 0.5).abs() <= 1e-6);
            }
            other => panic!("expected unique, got {other:?}"),
        }
        match uniqueness_probe(&t_triangle(), &[0.0, 0.0], 10, 5, &opts).unwrap() {
            UniquenessOutcome::MultipleFound { solutions } => {
                assert!(solutions.len() >= 2);
            }
            other => panic!("expected multiple, got {other:?}"),
        }
    }

    #[test]
    fn invalid_options_are_rejected() {
        let op = t_circle();
        let bad_theta = SolveOptions { theta: 0.0, ..Default::default() };
        assert!(matches!(solve_ergodic(&op, &bad_theta), Err(SolveError::InvalidArgument(_))));
        let bad_tol = SolveOptions { tol: -1.0, ..Default::default() };
        assert!(matches!(solve_ergodic(&op, &bad_tol), Err(SolveError::InvalidArgument(_))));
        assert!(matches!(
            solve_ergodic_from(&op, &[1.0], &SolveOptions::default()),
            Err(SolveError::Operator(OperatorError::Dimension { .. }))
        ));
    }
}
