//! Finite zero-sum stochastic game data model and JSON I/O.
//!
//! A game has states `1..=n`, per-state finite action sets for the maximizer
//! and the minimizer, a stage payoff `r(i, a, b)` paid by MIN to MAX, and a
//! transition law `p(. | i, a, b)` over next states. Internally states and
//! actions are 0-based indices; [`StateId`] displays 1-based, which is the
//! convention used in every report and error message.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Probability rows must sum to 1 within this tolerance to be accepted.
pub const ROW_SUM_TOL: f64 = 1e-9;

/// Transition entries at or below this threshold are treated as exact zeros
/// when computing supports, so stray float dust does not create phantom edges.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Rows whose sum deviates from 1 by no more than `ROW_SUM_TOL` but more than
/// this are renormalized on construction; rows already within this deviation
/// are left bit-for-bit untouched so that save/load round-trips exactly.
const RENORM_SKIP_TOL: f64 = 1e-13;

/// Identifier of a game state. Stored 0-based, displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(usize);

impl StateId {
    /// Wraps a 0-based state index.
    pub fn new(index: usize) -> Self {
        StateId(index)
    }

    /// Parses a 1-based label as used in files and reports. Returns `None`
    /// for 0.
    pub fn from_one_based(label: usize) -> Option<Self> {
        label.checked_sub(1).map(StateId)
    }

    /// 0-based index for array access.
    pub fn index(self) -> usize {
        self.0
    }

    /// 1-based label for display.
    pub fn one_based(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

/// A set of states, kept as 0-based indices.
pub type StateSet = BTreeSet<usize>;

/// Renders a state set with 1-based labels, e.g. `{1, 3}`.
pub fn format_state_set(set: &StateSet) -> String {
    let inner: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

/// Errors raised while reading, validating, or manipulating games.
#[derive(Debug, thiserror::Error)]
pub enum GameError {
    /// The file could not be read or written.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// The file is not syntactically valid JSON.
    #[error("parse error: {0}")]
    Parse(String),
    /// The JSON is well formed but does not have the expected keys or shapes.
    #[error("schema error: {0}")]
    Schema(String),
    /// The data has the right shape but violates a numeric invariant.
    #[error("invalid game: {0}")]
    Validation(ValidationReport),
    /// A caller-supplied argument does not match the game (wrong dimension,
    /// out-of-range state, non-finite entry).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// One problem found during validation, with a JSON-path-like location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationIssue {
    /// Where the problem is, e.g. `trans[2][0][1]` (0-based indices into the
    /// raw arrays, matching the file layout).
    pub location: String,
    /// Human-readable description of the violation.
    pub message: String,
    pub(crate) is_shape: bool,
}

/// Outcome of validating a raw game description.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    /// All problems found; empty iff the game is valid.
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    /// True when no issues were found.
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }

    fn push(&mut self, location: impl Into<String>, message: impl Into<String>, is_shape: bool) {
        self.issues.push(ValidationIssue {
            location: location.into(),
            message: message.into(),
            is_shape,
        });
    }

    fn has_shape_issue(&self) -> bool {
        self.issues.iter().any(|i| i.is_shape)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "valid");
        }
        write!(f, "{} issue(s)", self.issues.len())?;
        for issue in &self.issues {
            write!(f, "; {}: {}", issue.location, issue.message)?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Direct mirror of the on-disk JSON game description, before any checking.
///
/// Field layout: `payoff[i][a][b]` is the stage payoff in state `i` when MAX
/// plays its `a`-th action and MIN its `b`-th; `trans[i][a][b]` is the
/// probability row over next states (length `n`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGame {
    /// Number of states.
    pub n: usize,
    /// Per-state action labels for the maximizer.
    pub actions_max: Vec<Vec<String>>,
    /// Per-state action labels for the minimizer.
    pub actions_min: Vec<Vec<String>>,
    /// `payoff[i][a][b]`, indexed state, MAX action, MIN action.
    pub payoff: Vec<Vec<Vec<f64>>>,
    /// `trans[i][a][b]` is a probability row of length `n`.
    pub trans: Vec<Vec<Vec<Vec<f64>>>>,
}

impl RawGame {
    /// Checks every structural and numeric invariant and reports all
    /// violations at once. Shape problems (ragged arrays, wrong lengths) and
    /// numeric problems (non-finite payoffs, negative probabilities, rows not
    /// summing to 1 within [`ROW_SUM_TOL`]) both land in the report.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.n;
        if n == 0 {
            report.push("n", "game must have at least one state", true);
            return report;
        }
        for (name, field_len) in [
            ("actions_max", self.actions_max.len()),
            ("actions_min", self.actions_min.len()),
            ("payoff", self.payoff.len()),
            ("trans", self.trans.len()),
        ] {
            if field_len != n {
                report.push(name, format!("expected {n} entries (one per state), found {field_len}"), true);
            }
        }
        if report.has_shape_issue() {
            return report;
        }
        for i in 0..n {
            let m = self.actions_max[i].len();
            let k = self.actions_min[i].len();
            if m == 0 {
                report.push(format!("actions_max[{i}]"), "empty action set", true);
            }
            if k == 0 {
                report.push(format!("actions_min[{i}]"), "empty action set", true);
            }
            if self.payoff[i].len() != m {
                report.push(
                    format!("payoff[{i}]"),
                    format!("expected {m} rows (one per MAX action), found {}", self.payoff[i].len()),
                    true,
                );
                continue;
            }
            if self.trans[i].len() != m {
                report.push(
                    format!("trans[{i}]"),
                    format!("expected {m} rows (one per MAX action), found {}", self.trans[i].len()),
                    true,
                );
                continue;
            }
            for a in 0..m {
                if self.payoff[i][a].len() != k {
                    report.push(
                        format!("payoff[{i}][{a}]"),
                        format!("expected {k} entries (one per MIN action), found {}", self.payoff[i][a].len()),
                        true,
                    );
                    continue;
                }
                if self.trans[i][a].len() != k {
                    report.push(
                        format!("trans[{i}][{a}]"),
                        format!("expected {k} entries (one per MIN action), found {}", self.trans[i][a].len()),
                        true,
                    );
                    continue;
                }
                for b in 0..k {
                    let r = self.payoff[i][a][b];
                    if !r.is_finite() {
                        report.push(format!("payoff[{i}][{a}][{b}]"), format!("non-finite payoff {r}"), false);
                    }
                    let row = &self.trans[i][a][b];
                    if row.len() != n {
                        report.push(
                            format!("trans[{i}][{a}][{b}]"),
                            format!("expected probability row of length {n}, found {}", row.len()),
                            true,
                        );
                        continue;
                    }
                    let mut sum = 0.0;
                    let mut row_ok = true;
                    for (l, &p) in row.iter().enumerate() {
                        if !p.is_finite() || p < 0.0 {
                            report.push(
                                format!("trans[{i}][{a}][{b}][{l}]"),
                                format!("probability entry {p} is not a finite nonnegative number"),
                                false,
                            );
                            row_ok = false;
                        }
                        sum += p;
                    }
                    if row_ok && (sum - 1.0).abs() > ROW_SUM_TOL {
                        report.push(
                            format!("trans[{i}][{a}][{b}]"),
                            format!("probability row sums to {sum:.12}, outside 1 ± {ROW_SUM_TOL:e}"),
                            false,
                        );
                    }
                }
            }
        }
        report
    }
}

/// A validated finite zero-sum stochastic game.
///
/// Construction goes through [`FiniteGame::from_raw`] (or [`FiniteGame::load`]),
/// which rejects malformed data, so every instance satisfies: payoffs finite,
/// transition rows nonnegative and summing to 1 within [`ROW_SUM_TOL`]
/// (renormalized to machine accuracy on construction), at least one action
/// per player per state.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGame {
    actions_max: Vec<Vec<String>>,
    actions_min: Vec<Vec<String>>,
    payoff: Vec<Vec<Vec<f64>>>,
    trans: Vec<Vec<Vec<Vec<f64>>>>,
}

impl FiniteGame {
    /// Validates a raw description and builds the game. Probability rows with
    /// a small deviation from sum 1 (at most [`ROW_SUM_TOL`]) are renormalized;
    /// rows already summing to 1 at machine accuracy are left untouched, which
    /// makes construction idempotent and save/load round-trips exact.
    pub fn from_raw(raw: RawGame) -> Result<Self, GameError> {
        let report = raw.validate();
        if !report.ok() {
            if report.has_shape_issue() {
                let joined: Vec<String> = report
                    .issues
                    .iter()
                    .filter(|i| i.is_shape)
                    .map(|i| format!("{}: {}", i.location, i.message))
                    .collect();
                return Err(GameError::Schema(joined.join("; ")));
            }
            return Err(GameError::Validation(report));
        }
        let RawGame { actions_max, actions_min, payoff, mut trans, .. } = raw;
        for state in trans.iter_mut() {
            for row_group in state.iter_mut() {
                for row in row_group.iter_mut() {
                    let sum: f64 = row.iter().sum();
                    if (sum - 1.0).abs() > RENORM_SKIP_TOL {
                        for p in row.iter_mut() {
                            *p /= sum;
                        }
                    }
                }
            }
        }
        Ok(FiniteGame { actions_max, actions_min, payoff, trans })
    }

    /// Builds a game from tensors, generating positional action labels
    /// (`"0"`, `"1"`, ...). Intended for programmatic construction.
    pub fn from_tensors(
        payoff: Vec<Vec<Vec<f64>>>,
        trans: Vec<Vec<Vec<Vec<f64>>>>,
    ) -> Result<Self, GameError> {
        let n = payoff.len();
        let label = |count: usize| -> Vec<String> { (0..count).map(|a| a.to_string()).collect() };
        let actions_max: Vec<Vec<String>> = payoff.iter().map(|p| label(p.len())).collect();
        let actions_min: Vec<Vec<String>> = payoff
            .iter()
            .map(|p| label(p.first().map_or(0, |row| row.len())))
            .collect();
        Self::from_raw(RawGame { n, actions_max, actions_min, payoff, trans })
    }

    /// Number of states.
    pub fn n(&self) -> usize {
        self.payoff.len()
    }

    /// Action labels of the maximizer in state `i`.
    pub fn actions_max(&self, i: StateId) -> &[String] {
        &self.actions_max[i.index()]
    }

    /// Action labels of the minimizer in state `i`.
    pub fn actions_min(&self, i: StateId) -> &[String] {
        &self.actions_min[i.index()]
    }

    /// `(MAX actions, MIN actions)` counts in state `i`.
    pub fn num_actions(&self, i: StateId) -> (usize, usize) {
        (self.actions_max[i.index()].len(), self.actions_min[i.index()].len())
    }

    /// Stage payoff `r(i, a, b)`.
    pub fn payoff(&self, i: StateId, a: usize, b: usize) -> f64 {
        self.payoff[i.index()][a][b]
    }

    /// Transition probability row `p(. | i, a, b)`, length `n`.
    pub fn trans_row(&self, i: StateId, a: usize, b: usize) -> &[f64] {
        &self.trans[i.index()][a][b]
    }

    /// States reachable in one step from `(i, a, b)`: indices whose transition
    /// probability exceeds [`SUPPORT_TOL`].
    pub fn support(&self, i: StateId, a: usize, b: usize) -> StateSet {
        self.trans[i.index()][a][b]
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > SUPPORT_TOL)
            .map(|(l, _)| l)
            .collect()
    }

    /// The game `g + Γ` whose stage payoff is `r(i, a, b) + g_i`; transitions
    /// and action sets are shared with `self`. Errors if `g` has the wrong
    /// length or non-finite entries.
    pub fn perturb(&self, g: &[f64]) -> Result<FiniteGame, GameError> {
        if g.len() != self.n() {
            return Err(GameError::InvalidArgument(format!(
                "perturbation has length {}, game has {} states",
                g.len(),
                self.n()
            )));
        }
        if let Some(bad) = g.iter().find(|v| !v.is_finite()) {
            return Err(GameError::InvalidArgument(format!("non-finite perturbation entry {bad}")));
        }
        let mut out = self.clone();
        for (i, state) in out.payoff.iter_mut().enumerate() {
            for row in state.iter_mut() {
                for entry in row.iter_mut() {
                    *entry += g[i];
                }
            }
        }
        Ok(out)
    }

    /// Largest absolute stage payoff over all `(i, a, b)`.
    pub fn payoff_bound(&self) -> f64 {
        self.payoff
            .iter()
            .flat_map(|s| s.iter())
            .flat_map(|r| r.iter())
            .fold(0.0, |acc: f64, &v| acc.max(v.abs()))
    }

    /// Raw description with the same content (probability rows as currently
    /// stored, i.e. after any construction-time renormalization).
    pub fn to_raw(&self) -> RawGame {
        RawGame {
            n: self.n(),
            actions_max: self.actions_max.clone(),
            actions_min: self.actions_min.clone(),
            payoff: self.payoff.clone(),
            trans: self.trans.clone(),
        }
    }

    /// Serializes to the JSON file format (pretty-printed).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("game serialization cannot fail")
    }

    /// Parses and validates a game from JSON text.
    pub fn from_json(text: &str) -> Result<Self, GameError> {
        // Parse in two passes so a syntax error and a wrong-schema error are
        // reported as different kinds.
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| GameError::Parse(e.to_string()))?;
        let raw: RawGame =
            serde_json::from_value(value).map_err(|e| GameError::Schema(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Loads a game from a JSON file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, GameError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| GameError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Saves the game as a JSON file. `load(save(g))` reproduces `g`
    /// bit-for-bit.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), GameError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|source| GameError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}
