//! Combinatorial ergodicity analysis through dominions.
//!
//! A *dominion* of a player is a set of states the player can keep the play
//! inside forever, surely, whatever the opponent does: every state of the set
//! admits an own pure action whose every opponent response moves only within
//! the set. A game is ergodic — its invariant per-stage value is independent
//! of the initial state for every payoff perturbation — exactly when the two
//! players have no pair of disjoint dominions.
//!
//! This module decides that question three independent ways and cross-checks
//! them: exact subset enumeration (authoritative, capped at [`DEFAULT_ENUM_CAP`]
//! states), an asymptotic probe of the game's operator along coordinate
//! directions ([`slice_limit_test`]), and the solver's random-perturbation
//! probe. Disagreements are reported, never papered over.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::game::{format_state_set, FiniteGame, StateSet};
use crate::shapley::{OperatorHandle, OperatorError};
use crate::solver::{
    self, ProbeReport, SolveError, SolveOptions, StallCheck, TargetedSearch, TrialOutcome,
};

/// Default ceiling on the number of states for exponential subset searches.
pub const DEFAULT_ENUM_CAP: usize = 16;

/// Magnitudes of the probe parameter kappa in [`slice_limit_test`]; the sign
/// is negative for MAX, positive for MIN.
pub const KAPPA_SCHEDULE: [f64; 4] = [1e1, 1e2, 1e3, 1e4];

/// Two successive probe evaluations within this tolerance count as a plateau
/// (bounded limit) in [`slice_limit_test`].
pub const PLATEAU_TOL: f64 = 1e-6;

/// The two players of a zero-sum game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Max => write!(f, "MAX"),
            Player::Min => write!(f, "MIN"),
        }
    }
}

/// Errors from dominion analysis.
#[derive(Debug, thiserror::Error)]
pub enum DominionError {
    #[error("the empty set cannot be a dominion candidate")]
    EmptySet,
    #[error("state {state} out of range for a game with {n} states (states are 1-based)")]
    StateOutOfRange { state: usize, n: usize },
    #[error(
        "game has {n} states but subset enumeration is capped at {cap}: \
         the disjoint-dominion search inspects up to 2^n candidate sets; \
         raise the cap explicitly to force the exponential search"
    )]
    TooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// How an ergodicity verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictMethod {
    /// Exact subset enumeration of dominions.
    Combinatorial,
    /// Asymptotic operator probes ([`slice_limit_test`]) on subset pairs.
    SliceProbe,
}

/// Whether a game is ergodic, and — for the combinatorial method on
/// non-ergodic games — a verified pair of disjoint dominions as witness.
#[derive(Debug, Clone)]
pub struct ErgodicityVerdict {
    pub ergodic: bool,
    /// `(MAX dominion, MIN dominion)`, disjoint and nonempty. Present
    /// exactly when `ergodic` is false and `method` is `Combinatorial`.
    pub witness: Option<(StateSet, StateSet)>,
    pub method: VerdictMethod,
}

/// All dominions of one player, with the underlying membership test results.
#[derive(Debug, Clone)]
pub struct DominionReport {
    pub player: Player,
    /// Every nonempty dominion, sorted by cardinality then lexicographically.
    /// The full state set is always present.
    pub all_dominions: Vec<StateSet>,
    /// Test outcome for every nonempty subset inspected.
    pub checks: BTreeMap<StateSet, bool>,
}

impl DominionReport {
    /// Cached membership result for a subset, if it was inspected.
    pub fn check(&self, d: &StateSet) -> Option<bool> {
        self.checks.get(d).copied()
    }
}

fn check_subset(game: &FiniteGame, d: &StateSet) -> Result<(), DominionError> {
    if d.is_empty() {
        return Err(DominionError::EmptySet);
    }
    if let Some(&state) = d.iter().find(|&&i| i >= game.n()) {
        return Err(DominionError::StateOutOfRange { state: state + 1, n: game.n() });
    }
    Ok(())
}

/// Whether state `i` has an own-player action keeping every one-step support
/// inside the member set, whatever the opponent plays.
fn can_stay_inside(game: &FiniteGame, player: Player, i: usize, member: &[bool]) -> bool {
    let state = crate::game::StateId::new(i);
    let (m, k) = game.num_actions(state);
    let (own_count, opp_count) = match player {
        Player::Max => (m, k),
        Player::Min => (k, m),
    };
    (0..own_count).any(|own| {
        (0..opp_count).all(|opp| {
            let (a, b) = match player {
                Player::Max => (own, opp),
                Player::Min => (opp, own),
            };
            game.trans_row(state, a, b)
                .iter()
                .enumerate()
                .all(|(l, &p)| p <= crate::game::SUPPORT_TOL || member[l])
        })
    })
}

/// Whether `d` is a dominion of `player`: every state of `d` admits an own
/// pure action whose every opponent response keeps the one-step support
/// inside `d`.
pub fn is_dominion(game: &FiniteGame, player: Player, d: &StateSet) -> Result<bool, DominionError> {
    check_subset(game, d)?;
    let mut member = vec![false; game.n()];
    for &i in d {
        member[i] = true;
    }
    Ok(d.iter().all(|&i| can_stay_inside(game, player, i, &member)))
}

/// The unique largest dominion of `player` contained in `s` (the union of
/// all of them), possibly empty. Computed by the greatest-fixed-point
/// deletion loop: repeatedly remove states that cannot stay inside the
/// current set.
///
/// States in `s` must be in range (caller bug otherwise).
pub fn largest_dominion_within(game: &FiniteGame, player: Player, s: &StateSet) -> StateSet {
    assert!(s.iter().all(|&i| i < game.n()), "state out of range");
    let mut member = vec![false; game.n()];
    for &i in s {
        member[i] = true;
    }
    loop {
        let doomed: Vec<usize> = (0..game.n())
            .filter(|&i| member[i] && !can_stay_inside(game, player, i, &member))
            .collect();
        if doomed.is_empty() {
            break;
        }
        for i in doomed {
            member[i] = false;
        }
    }
    (0..game.n()).filter(|&i| member[i]).collect()
}

/// Masks of all nonempty subsets of `[n]`, sorted by cardinality then value.
fn masks_by_cardinality(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

fn mask_to_set(mask: u32) -> StateSet {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Tests every nonempty subset and reports all dominions of `player`.
/// Subset checks run in parallel; the exponential search is refused above
/// `enum_cap` states.
pub fn enumerate_dominions(
    game: &FiniteGame,
    player: Player,
    enum_cap: usize,
) -> Result<DominionReport, DominionError> {
    let n = game.n();
    if n > enum_cap {
        return Err(DominionError::TooLarge { n, cap: enum_cap });
    }
    let masks = masks_by_cardinality(n);
    let results: Vec<(u32, bool)> = masks
        .par_iter()
        .map(|&mask| {
            let set = mask_to_set(mask);
            let ok = is_dominion(game, player, &set).expect("subsets of [n] are valid candidates");
            (mask, ok)
        })
        .collect();
    let mut all_dominions = Vec::new();
    let mut checks = BTreeMap::new();
    for (mask, ok) in results {
        let set = mask_to_set(mask);
        if ok {
            all_dominions.push(set.clone());
        }
        checks.insert(set, ok);
    }
    Ok(DominionReport { player, all_dominions, checks })
}

/// Decides ergodicity by exhaustive search for a pair of disjoint dominions:
/// MIN dominions are enumerated by increasing cardinality, and for each the
/// largest MAX dominion in its complement is computed; the first nonempty
/// hit is returned as the witness. The MAX-first order is also run and must
/// reach the same verdict (it always does; violated only by a bug).
pub fn disjoint_dominions(
    game: &FiniteGame,
    enum_cap: usize,
) -> Result<ErgodicityVerdict, DominionError> {
    let n = game.n();
    if n > enum_cap {
        return Err(DominionError::TooLarge { n, cap: enum_cap });
    }
    let full: StateSet = (0..n).collect();
    let search = |first: Player| -> Option<(StateSet, StateSet)> {
        let report = enumerate_dominions(game, first, enum_cap).expect("cap already checked");
        for d in &report.all_dominions {
            let complement: StateSet = full.difference(d).copied().collect();
            if complement.is_empty() {
                continue;
            }
            let other = largest_dominion_within(game, first.opponent(), &complement);
            if !other.is_empty() {
                return Some((d.clone(), other));
            }
        }
        None
    };
    let min_first = search(Player::Min);
    let max_first = search(Player::Max);
    assert_eq!(
        min_first.is_some(),
        max_first.is_some(),
        "disjoint-dominion search must not depend on player order"
    );
    Ok(match min_first {
        Some((d_min, d_max)) => ErgodicityVerdict {
            ergodic: false,
            witness: Some((d_max, d_min)),
            method: VerdictMethod::Combinatorial,
        },
        None => ErgodicityVerdict { ergodic: true, witness: None, method: VerdictMethod::Combinatorial },
    })
}

/// Asymptotic dominion test on the game's operator. The probe input is
/// `kappa` on the complement of `d` and 0 on `d`, with `kappa` pushed toward
/// `-inf` for MAX (resp. `+inf` for MIN) along [`KAPPA_SCHEDULE`]; `d` is
/// reported as a dominion when the `d`-coordinates of the operator values
/// plateau (successive difference at most [`PLATEAU_TOL`] at the last step)
/// instead of drifting with `kappa`.
///
/// This is a numerical probe of the same property [`is_dominion`] decides
/// combinatorially; the two agree on finite games (an invariant the test
/// suites verify), but the combinatorial answer is the authoritative one.
pub fn slice_limit_test(
    game: &FiniteGame,
    d: &StateSet,
    player: Player,
) -> Result<bool, DominionError> {
    check_subset(game, d)?;
    slice_limit_test_op(&OperatorHandle::from_game(game.clone()), d, player)
}

/// [`slice_limit_test`] for an arbitrary operator handle.
pub fn slice_limit_test_op(
    op: &OperatorHandle,
    d: &StateSet,
    player: Player,
) -> Result<bool, DominionError> {
    let n = op.dim();
    if d.is_empty() {
        return Err(DominionError::EmptySet);
    }
    if let Some(&state) = d.iter().find(|&&i| i >= n) {
        return Err(DominionError::StateOutOfRange { state: state + 1, n });
    }
    let sign = match player {
        Player::Max => -1.0,
        Player::Min => 1.0,
    };
    let mut images: Vec<Vec<f64>> = Vec::with_capacity(KAPPA_SCHEDULE.len());
    for magnitude in KAPPA_SCHEDULE {
        let kappa = sign * magnitude;
        let x: Vec<f64> = (0..n).map(|i| if d.contains(&i) { 0.0 } else { kappa }).collect();
        let tx = op.eval(&x)?;
        images.push(d.iter().map(|&i| tx[i]).collect());
    }
    // Largest change of any inside coordinate over the last two rungs of
    // the schedule.
    let step = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).map(|(p, q)| (q - p).abs()).fold(0.0, f64::max)
    };
    let last = step(&images[images.len() - 2], &images[images.len() - 1]);
    let prior = step(&images[images.len() - 3], &images[images.len() - 2]);

    // Bounded limits are approached at rate O(1/kappa), so the last step is
    // either inside the plateau band (widened by the evaluation noise at the
    // largest magnitude, which grows with kappa) or clearly decaying
    // relative to the previous step. Escaping coordinates grow linearly in
    // kappa, multiplying the step tenfold per rung, so the two regimes are
    // far apart. Escape probabilities below the noise band (~1e-8 of a
    // stage) are beyond the probe's resolution.
    let noise_band = 10.0 * crate::matrix_game::DEFAULT_LP_TOL * KAPPA_SCHEDULE[KAPPA_SCHEDULE.len() - 1];
    let bounded = last <= PLATEAU_TOL.max(noise_band) || last <= 0.5 * prior;
    Ok(bounded)
}

/// Outcome of searching for disjoint subset pairs that both pass
/// [`slice_limit_test`] — the operator-side counterpart of the
/// disjoint-dominion search.
fn disjoint_slice_pair(
    game: &FiniteGame,
    enum_cap: usize,
) -> Result<Option<(StateSet, StateSet)>, DominionError> {
    let n = game.n();
    if n > enum_cap {
        return Err(DominionError::TooLarge { n, cap: enum_cap });
    }
    let op = OperatorHandle::from_game(game.clone());
    let mut memo_max: Vec<Option<bool>> = vec![None; 1 << n];
    let mut memo_min: Vec<Option<bool>> = vec![None; 1 << n];
    let test = |player: Player, mask: u32, memo_slot: &mut Option<bool>| -> Result<bool, DominionError> {
        if let Some(cached) = *memo_slot {
            return Ok(cached);
        }
        let result = slice_limit_test_op(&op, &mask_to_set(mask), player)?;
        *memo_slot = Some(result);
        Ok(result)
    };
    let all = (1u32 << n) - 1;
    for j_mask in masks_by_cardinality(n) {
        if j_mask == all {
            continue; // no room for a disjoint partner
        }
        {
            let slot = &mut memo_min[j_mask as usize];
            if !test(Player::Min, j_mask, slot)? {
                continue;
            }
        }
        let complement = all & !j_mask;
        let mut subsets: Vec<u32> = Vec::new();
        let mut sub = complement;
        loop {
            if sub != 0 {
                subsets.push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & complement;
        }
        subsets.sort_by_key(|m| (m.count_ones(), *m));
        for i_mask in subsets {
            let slot = &mut memo_max[i_mask as usize];
            if test(Player::Max, i_mask, slot)? {
                return Ok(Some((mask_to_set(i_mask), mask_to_set(j_mask))));
            }
        }
    }
    Ok(None)
}

/// Tuning for [`ergodicity_crosscheck`].
#[derive(Debug, Clone)]
pub struct CrosscheckOptions {
    /// Subset-enumeration ceiling for the combinatorial and slice searches.
    pub enum_cap: usize,
    /// Number of random payoff perturbations for the solver probe.
    pub probe_trials: usize,
    /// Extra witness-guided draws hunting for an unsolvable perturbation
    /// when the combinatorial verdict is non-ergodic.
    pub targeted_draws: usize,
    /// Master seed for all randomized parts.
    pub seed: u64,
    /// Solver settings for each probe trial.
    pub solve: SolveOptions,
}

impl Default for CrosscheckOptions {
    fn default() -> Self {
        // Probe solves get plateau detection so unsolvable draws fail fast
        // instead of burning the full iteration budget.
        let solve = SolveOptions { stall: Some(StallCheck::default()), ..SolveOptions::default() };
        CrosscheckOptions {
            enum_cap: DEFAULT_ENUM_CAP,
            probe_trials: 20,
            targeted_draws: 50,
            seed: 0,
            solve,
        }
    }
}

/// Three independent ergodicity verdicts on one game, with their agreement.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    /// Authoritative combinatorial verdict (with witness when non-ergodic).
    pub combinatorial: ErgodicityVerdict,
    /// Whether the slice search found no disjoint passing pair.
    pub slice_ergodic: bool,
    /// The pair found by the slice search, when any.
    pub slice_pair: Option<(StateSet, StateSet)>,
    /// Random-perturbation solvability probe.
    pub probe: ProbeReport,
    /// Witness-guided search for an unsolvable perturbation; run only when
    /// the combinatorial verdict is non-ergodic.
    pub targeted: Option<TargetedSearch>,
    /// Combinatorial and slice verdicts agree.
    pub agree_slice: bool,
    /// The probe is consistent with the combinatorial verdict: every trial
    /// solvable on an ergodic game; at least one unsolvable perturbation
    /// found (random or targeted) on a non-ergodic one.
    pub agree_probe: bool,
}

impl CrosscheckReport {
    /// True when all three methods agree.
    pub fn unanimous(&self) -> bool {
        self.agree_slice && self.agree_probe
    }
}

/// Decides ergodicity by all three routes — dominion enumeration, slice
/// probes, random-perturbation solving — and reports their agreement.
pub fn ergodicity_crosscheck(
    game: &FiniteGame,
    opts: &CrosscheckOptions,
) -> Result<CrosscheckReport, DominionError> {
    let combinatorial = disjoint_dominions(game, opts.enum_cap)?;
    let slice_pair = disjoint_slice_pair(game, opts.enum_cap)?;
    let slice_ergodic = slice_pair.is_none();

    let op = OperatorHandle::from_game(game.clone());
    let probe = solver::solvability_probe(&op, opts.probe_trials, opts.seed, &opts.solve)?;
    let targeted = match &combinatorial.witness {
        Some(witness) => Some(solver::targeted_unsolvable_search(
            &op,
            witness,
            opts.targeted_draws,
            opts.seed ^ 0x7A06_E7ED,
            &opts.solve,
        )?),
        None => None,
    };

    let any_unsolvable = probe
        .trials
        .iter()
        .any(|t| matches!(t.outcome, TrialOutcome::Unsolved { .. }))
        || targeted.as_ref().is_some_and(|t| t.found.is_some());
    let all_solved = probe
        .trials
        .iter()
        .all(|t| matches!(t.outcome, TrialOutcome::Solved { .. }));
    let agree_probe = if combinatorial.ergodic { all_solved } else { any_unsolvable };

    Ok(CrosscheckReport {
        agree_slice: combinatorial.ergodic == slice_ergodic,
        agree_probe,
        combinatorial,
        slice_ergodic,
        slice_pair,
        probe,
        targeted,
    })
}

/// Renders a witness pair for messages: `MAX {1} / MIN {2}`.
pub fn format_witness(witness: &(StateSet, StateSet)) -> String {
    format!("MAX {} / MIN {}", format_state_set(&witness.0), format_state_set(&witness.1))
}
