//! Command-line interface: validate / matrix-solve / iterate / analyze /
//! solve / perturb / simulate.
//!
//! Every command reads JSON inputs, writes a JSON report (CSV for iteration
//! traces) to `--out` or stdout, and embeds a [`RunManifest`] — command,
//! crate version, SHA-256 of each input file, seeds, wall time, and all
//! effective parameters — so a result file is reproducible on its own.
//!
//! Exit codes: `0` success, `1` input or usage errors, `2` mathematically
//! expected failures (no convergence, enumeration cap exceeded). The
//! distinction lets scripts separate "fix your file" from "this game really
//! is non-ergodic".

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::dominion::{
    self, CrosscheckOptions, DominionError, Player, VerdictMethod,
};
use crate::game::{FiniteGame, GameError, StateId, StateSet};
use crate::matrix_game::{self, MatrixGame, MatrixGameError};
use crate::shapley::{self, fixtures, OperatorError, OperatorHandle};
use crate::sim::{self, SimError};
use crate::solver::{
    self, ErgodicSolution, SolveError, SolveOptions, StallCheck, TargetedSearch, TrialOutcome,
};

/// Environment variable capping the worker thread pool.
pub const THREADS_ENV: &str = "ERGODIC_GAMES_THREADS";

#[derive(Parser)]
#[command(
    name = "ergodic-games",
    version,
    about = "Ergodicity analysis and uniform-value solving for finite zero-sum stochastic games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a game file against the format and report every violation.
    Validate {
        /// Game JSON file (or closed-form operator spec).
        #[arg(long)]
        game: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a one-shot matrix game given as a JSON array of rows.
    MatrixSolve {
        /// Matrix JSON file: [[row], [row], ...].
        #[arg(long)]
        matrix: PathBuf,
        /// Certificate tolerance.
        #[arg(long, default_value_t = matrix_game::DEFAULT_LP_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the finite-horizon value recursion and emit a CSV trace.
    Iterate {
        #[arg(long)]
        game: PathBuf,
        /// Number of horizons to compute.
        #[arg(long)]
        steps: usize,
        /// CSV destination; a manifest sidecar `<out>.manifest.json` is
        /// written next to it. Without `--out`, CSV goes to stdout and the
        /// manifest to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full ergodicity analysis: dominions, slice probes, solvability probe.
    Analyze {
        #[arg(long)]
        game: PathBuf,
        /// Ceiling on the number of states for the exponential subset search.
        #[arg(long, default_value_t = dominion::DEFAULT_ENUM_CAP)]
        enum_cap: usize,
        /// Random perturbations for the solvability probe.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Solver tolerance for probe solves.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Iteration budget for probe solves.
        #[arg(long, default_value_t = 200_000)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the ergodic equation and extract stationary strategies.
    Solve {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Damping factor of the iteration, in (0, 1].
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[arg(long, default_value_t = 200_000)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Probe solvability under random payoff perturbations.
    Perturb {
        #[arg(long)]
        game: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
        #[arg(long, default_value_t = 200_000)]
        max_iter: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo play under fixed stationary strategies.
    Simulate {
        #[arg(long)]
        game: PathBuf,
        /// JSON file with "sigma" and "tau" per-state mixed actions
        /// (a `solve` output file works directly).
        #[arg(long)]
        strategies: PathBuf,
        /// Initial state, 1-based.
        #[arg(long)]
        state: usize,
        /// Stages per episode.
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = 1000)]
        episodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Entry point with explicit arguments; returns the process exit code.
/// `argv[0]` is the program name, as usual.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    init_thread_pool();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    run(cli.command)
}

/// [`dispatch`] on the process arguments.
pub fn dispatch_env() -> i32 {
    dispatch(std::env::args_os())
}

fn init_thread_pool() {
    static INIT: OnceLock<()> = OnceLock::new();
    INIT.get_or_init(|| {
        if let Some(threads) = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&v| v >= 1)
        {
            // Ignore failure: a pool may already exist in-process (tests).
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
        }
    });
}

/// The provenance block embedded in every report.
struct RunManifest {
    command: &'static str,
    inputs: BTreeMap<String, String>,
    seed: Option<u64>,
    parameters: Value,
    started: Instant,
}

impl RunManifest {
    fn new(command: &'static str) -> Self {
        RunManifest {
            command,
            inputs: BTreeMap::new(),
            seed: None,
            parameters: json!({}),
            started: Instant::now(),
        }
    }

    fn record_input(&mut self, path: &Path, bytes: &[u8]) {
        let digest = Sha256::digest(bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.insert(path.display().to_string(), format!("sha256:{hex}"));
    }

    fn render(&self) -> Value {
        json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs,
            "seed": self.seed,
            "parameters": self.parameters,
            "wall_time_seconds": self.started.elapsed().as_secs_f64(),
        })
    }
}

/// A command's terminal outcome: a JSON document plus exit code.
struct Outcome {
    document: Value,
    exit_code: i32,
}

enum CliFailure {
    /// Input/usage problems: exit 1.
    Input { kind: &'static str, message: String, detail: Value },
    /// Mathematically expected failures: exit 2.
    Expected { kind: &'static str, message: String, detail: Value },
    /// Output I/O problems (cannot write reports): exit 1, stderr only.
    Io(String),
}

impl CliFailure {
    fn input(kind: &'static str, message: impl Into<String>) -> Self {
        CliFailure::Input { kind, message: message.into(), detail: Value::Null }
    }

    fn expected(kind: &'static str, message: impl Into<String>, detail: Value) -> Self {
        CliFailure::Expected { kind, message: message.into(), detail }
    }
}

impl From<GameError> for CliFailure {
    fn from(e: GameError) -> Self {
        let kind = match &e {
            GameError::Io { .. } => "io",
            GameError::Parse(_) => "parse",
            GameError::Schema(_) => "schema",
            GameError::Validation(_) => "validation",
            GameError::InvalidArgument(_) => "invalid-argument",
        };
        CliFailure::input(kind, e.to_string())
    }
}

impl From<MatrixGameError> for CliFailure {
    fn from(e: MatrixGameError) -> Self {
        CliFailure::input("matrix", e.to_string())
    }
}

impl From<OperatorError> for CliFailure {
    fn from(e: OperatorError) -> Self {
        match &e {
            OperatorError::UnboundedGrowth { .. } => {
                CliFailure::expected("unbounded-growth", e.to_string(), Value::Null)
            }
            _ => CliFailure::input("operator", e.to_string()),
        }
    }
}

impl From<DominionError> for CliFailure {
    fn from(e: DominionError) -> Self {
        match &e {
            DominionError::TooLarge { .. } => CliFailure::expected("too-large", e.to_string(), Value::Null),
            DominionError::Operator(inner) => CliFailure::input("operator", inner.to_string()),
            DominionError::Solve(_) => CliFailure::input("solver", e.to_string()),
            _ => CliFailure::input("invalid-argument", e.to_string()),
        }
    }
}

impl From<SolveError> for CliFailure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NoConvergence { ref best, .. } => {
                let detail = json!({ "best": render_solution_core(best) });
                CliFailure::expected("no-convergence", e.to_string(), detail)
            }
            other => CliFailure::input("solver", other.to_string()),
        }
    }
}

impl From<SimError> for CliFailure {
    fn from(e: SimError) -> Self {
        let kind = match &e {
            SimError::InvalidStrategy { .. } => "invalid-strategy",
            SimError::InvalidArgument(_) => "invalid-argument",
        };
        CliFailure::input(kind, e.to_string())
    }
}

fn run(command: Command) -> i32 {
    let (out, result) = execute(command);
    let (document, exit_code) = match result {
        Ok(outcome) => (outcome.document, outcome.exit_code),
        Err(CliFailure::Io(message)) => {
            eprintln!("error: {message}");
            return 1;
        }
        Err(CliFailure::Input { kind, message, detail }) => {
            (json!({ "error": { "kind": kind, "message": message, "detail": detail } }), 1)
        }
        Err(CliFailure::Expected { kind, message, detail }) => {
            (json!({ "error": { "kind": kind, "message": message, "detail": detail } }), 2)
        }
    };
    if document.is_null() {
        // The command wrote its own output (CSV trace).
        return exit_code;
    }
    match emit(&out, &document) {
        Ok(()) => exit_code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn emit(out: &Option<PathBuf>, document: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(document).expect("reports serialize");
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Runs one command, returning its output destination and outcome.
fn execute(command: Command) -> (Option<PathBuf>, Result<Outcome, CliFailure>) {
    match command {
        Command::Validate { game, out } => (out.clone(), cmd_validate(&game)),
        Command::MatrixSolve { matrix, tol, out } => (out.clone(), cmd_matrix_solve(&matrix, tol)),
        Command::Iterate { game, steps, out } => {
            let result = cmd_iterate(&game, steps, out.as_deref());
            (None, result) // iterate writes its own CSV; JSON errors go to stdout
        }
        Command::Analyze { game, enum_cap, trials, seed, tol, max_iter, out } => {
            (out.clone(), cmd_analyze(&game, enum_cap, trials, seed, tol, max_iter))
        }
        Command::Solve { game, tol, theta, max_iter, out } => {
            (out.clone(), cmd_solve(&game, tol, theta, max_iter))
        }
        Command::Perturb { game, trials, seed, tol, theta, max_iter, out } => {
            (out.clone(), cmd_perturb(&game, trials, seed, tol, theta, max_iter))
        }
        Command::Simulate { game, strategies, state, horizon, episodes, seed, out } => {
            (out.clone(), cmd_simulate(&game, &strategies, state, horizon, episodes, seed))
        }
    }
}

/// What a `--game` file can contain.
enum GameInput {
    Finite(FiniteGame),
    /// A closed-form operator spec: `{"closed_form": "<name>"}`.
    Operator { name: String, handle: OperatorHandle },
}

fn read_bytes(path: &Path, manifest: &mut RunManifest) -> Result<Vec<u8>, CliFailure> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliFailure::input("io", format!("cannot read {}: {e}", path.display())))?;
    manifest.record_input(path, &bytes);
    Ok(bytes)
}

fn closed_form_by_name(name: &str) -> Option<OperatorHandle> {
    match name {
        "log" => Some(fixtures::log_game()),
        "t_square" => Some(fixtures::t_square()),
        "t_circle" => Some(fixtures::t_circle()),
        "t_triangle" => Some(fixtures::t_triangle()),
        _ => None,
    }
}

fn load_game_input(path: &Path, manifest: &mut RunManifest) -> Result<GameInput, CliFailure> {
    let bytes = read_bytes(path, manifest)?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliFailure::input("parse", format!("{} is not UTF-8", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliFailure::input("parse", format!("{}: {e}", path.display())))?;
    if let Some(name) = value.get("closed_form") {
        let name = name
            .as_str()
            .ok_or_else(|| CliFailure::input("schema", "closed_form must be a string"))?;
        let handle = closed_form_by_name(name).ok_or_else(|| {
            CliFailure::input(
                "schema",
                format!("unknown closed-form operator '{name}' (available: log, t_square, t_circle, t_triangle)"),
            )
        })?;
        return Ok(GameInput::Operator { name: name.to_string(), handle });
    }
    let game = FiniteGame::from_json(&text)?;
    Ok(GameInput::Finite(game))
}

fn require_finite(input: GameInput) -> Result<FiniteGame, CliFailure> {
    match input {
        GameInput::Finite(game) => Ok(game),
        GameInput::Operator { name, .. } => Err(CliFailure::input(
            "invalid-argument",
            format!("this command needs a finite game, got closed-form operator '{name}'"),
        )),
    }
}

// ---- rendering helpers ---------------------------------------------------

fn one_based(set: &StateSet) -> Value {
    Value::Array(set.iter().map(|&i| json!(i + 1)).collect())
}

fn witness_value(witness: &Option<(StateSet, StateSet)>) -> Value {
    match witness {
        Some((d_max, d_min)) => json!([one_based(d_max), one_based(d_min)]),
        None => Value::Null,
    }
}

fn method_name(method: VerdictMethod) -> &'static str {
    match method {
        VerdictMethod::Combinatorial => "combinatorial",
        VerdictMethod::SliceProbe => "slice-probe",
    }
}

fn render_solution_core(sol: &ErgodicSolution) -> Value {
    json!({
        "lambda": sol.lambda,
        "u": sol.u.rep(),
        "residual": sol.residual,
        "iterations": sol.iterations,
        "max_residual_increase": sol.max_residual_increase,
        "residual_trace": &sol.trace,
    })
}

fn render_trial(trial: &solver::ProbeTrial) -> Value {
    let (outcome, fields) = match &trial.outcome {
        TrialOutcome::Solved { lambda, residual, iterations } => (
            "solved",
            json!({ "lambda": lambda, "residual": residual, "iterations": iterations }),
        ),
        TrialOutcome::Unsolved { residual, iterations } => {
            ("unsolved", json!({ "residual": residual, "iterations": iterations }))
        }
        TrialOutcome::Failed { message } => ("failed", json!({ "message": message })),
    };
    let mut obj = json!({ "g": &trial.g, "outcome": outcome });
    obj.as_object_mut()
        .expect("object")
        .extend(fields.as_object().expect("object").clone());
    obj
}

fn render_probe(report: &solver::ProbeReport) -> Value {
    json!({
        "seed": report.seed,
        "fraction_solvable": report.fraction_solvable,
        "trials": report.trials.iter().map(render_trial).collect::<Vec<_>>(),
    })
}

fn render_targeted(search: &TargetedSearch) -> Value {
    json!({
        "attempted": search.attempted,
        "found": search.found.as_ref().map(|hit| json!({
            "g": &hit.g,
            "draw_index": hit.draw_index,
            "residual": hit.residual,
        })),
    })
}

// ---- commands ------------------------------------------------------------

fn cmd_validate(game_path: &Path) -> Result<Outcome, CliFailure> {
    let mut manifest = RunManifest::new("validate");
    manifest.parameters = json!({ "game": game_path.display().to_string() });
    let bytes = read_bytes(game_path, &mut manifest)?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliFailure::input("parse", format!("{} is not UTF-8", game_path.display())))?;

    // A closed-form spec validates by construction (the handle constructor
    // audits the operator contract).
    if let Ok(value) = serde_json::from_str::<Value>(&text) {
        if let Some(name) = value.get("closed_form").and_then(Value::as_str) {
            return match closed_form_by_name(name) {
                Some(handle) => Ok(Outcome {
                    document: json!({
                        "manifest": manifest.render(),
                        "valid": true,
                        "kind": "operator",
                        "operator": name,
                        "states": handle.dim(),
                        "issues": [],
                    }),
                    exit_code: 0,
                }),
                None => Err(CliFailure::input(
                    "schema",
                    format!("unknown closed-form operator '{name}'"),
                )),
            };
        }
    }

    match FiniteGame::from_json(&text) {
        Ok(game) => Ok(Outcome {
            document: json!({
                "manifest": manifest.render(),
                "valid": true,
                "kind": "game",
                "states": game.n(),
                "issues": [],
            }),
            exit_code: 0,
        }),
        Err(GameError::Validation(report)) => Ok(Outcome {
            document: json!({
                "manifest": manifest.render(),
                "valid": false,
                "kind": "game",
                "issues": report.issues.iter().map(|issue| json!({
                    "location": issue.location,
                    "message": issue.message,
                })).collect::<Vec<_>>(),
            }),
            exit_code: 1,
        }),
        Err(other) => Err(other.into()),
    }
}

fn cmd_matrix_solve(matrix_path: &Path, tol: f64) -> Result<Outcome, CliFailure> {
    let mut manifest = RunManifest::new("matrix-solve");
    manifest.parameters = json!({ "matrix": matrix_path.display().to_string(), "tol": tol });
    let bytes = read_bytes(matrix_path, &mut manifest)?;
    let rows: Vec<Vec<f64>> = serde_json::from_slice(&bytes)
        .map_err(|e| CliFailure::input("parse", format!("{}: {e}", matrix_path.display())))?;
    let matrix = MatrixGame::from_rows(rows)?;
    let sol = matrix_game::solve(&matrix, tol)?;
    Ok(Outcome {
        document: json!({
            "manifest": manifest.render(),
            "value": sol.value,
            "x": sol.x,
            "y": sol.y,
            "lower": sol.lower,
            "upper": sol.upper,
            "gap": sol.gap,
        }),
        exit_code: 0,
    })
}

fn cmd_iterate(game_path: &Path, steps: usize, out: Option<&Path>) -> Result<Outcome, CliFailure> {
    let mut manifest = RunManifest::new("iterate");
    manifest.parameters = json!({ "game": game_path.display().to_string(), "steps": steps });
    let input = load_game_input(game_path, &mut manifest)?;
    let handle = match input {
        GameInput::Finite(game) => OperatorHandle::from_game(game),
        GameInput::Operator { handle, .. } => handle,
    };
    let trace = shapley::value_iteration(&handle, steps)?;

    let mut csv = String::new();
    let n = handle.dim();
    csv.push('k');
    for i in 1..=n {
        csv.push_str(&format!(",v{i}"));
    }
    csv.push_str(",delta\n");
    for record in &trace.records {
        csv.push_str(&record.k.to_string());
        for v in &record.value {
            csv.push_str(&format!(",{v}"));
        }
        csv.push_str(&format!(",{}\n", record.delta));
    }

    match out {
        Some(path) => {
            std::fs::write(path, &csv)
                .map_err(|e| CliFailure::Io(format!("cannot write {}: {e}", path.display())))?;
            let sidecar = path.with_extension(
                path.extension()
                    .map(|ext| format!("{}.manifest.json", ext.to_string_lossy()))
                    .unwrap_or_else(|| "manifest.json".into()),
            );
            let manifest_doc = json!({ "manifest": manifest.render() });
            std::fs::write(&sidecar, serde_json::to_string_pretty(&manifest_doc).expect("serialize"))
                .map_err(|e| CliFailure::Io(format!("cannot write {}: {e}", sidecar.display())))?;
        }
        None => {
            print!("{csv}");
            eprintln!("{}", serde_json::to_string(&manifest.render()).expect("serialize"));
        }
    }
    // CSV already written; nothing further on stdout.
    Ok(Outcome { document: Value::Null, exit_code: 0 })
}

fn cmd_analyze(
    game_path: &Path,
    enum_cap: usize,
    trials: usize,
    seed: u64,
    tol: f64,
    max_iter: usize,
) -> Result<Outcome, CliFailure> {
    let mut manifest = RunManifest::new("analyze");
    manifest.seed = Some(seed);
    manifest.parameters = json!({
        "game": game_path.display().to_string(),
        "enum_cap": enum_cap,
        "trials": trials,
        "tol": tol,
        "max_iter": max_iter,
    });
    let game = require_finite(load_game_input(game_path, &mut manifest)?)?;

    let opts = CrosscheckOptions {
        enum_cap,
        probe_trials: trials,
        seed,
        solve: SolveOptions {
            tol,
            max_iter,
            record_trace: false,
            stall: Some(StallCheck::default()),
            ..SolveOptions::default()
        },
        ..CrosscheckOptions::default()
    };
    let report = dominion::ergodicity_crosscheck(&game, &opts)?;
    let max_doms = dominion::enumerate_dominions(&game, Player::Max, enum_cap)?;
    let min_doms = dominion::enumerate_dominions(&game, Player::Min, enum_cap)?;

    Ok(Outcome {
        document: json!({
            "manifest": manifest.render(),
            "ergodic": report.combinatorial.ergodic,
            "witness": witness_value(&report.combinatorial.witness),
            "method": method_name(report.combinatorial.method),
            "dominions": {
                "max": max_doms.all_dominions.iter().map(one_based).collect::<Vec<_>>(),
                "min": min_doms.all_dominions.iter().map(one_based).collect::<Vec<_>>(),
            },
            "crosscheck": {
                "slice_ergodic": report.slice_ergodic,
                "slice_pair": witness_value(&report.slice_pair),
                "probe": render_probe(&report.probe),
                "targeted": report.targeted.as_ref().map(render_targeted),
                "agree_slice": report.agree_slice,
                "agree_probe": report.agree_probe,
                "unanimous": report.unanimous(),
            },
        }),
        exit_code: 0,
    })
}

fn cmd_solve(game_path: &Path, tol: f64, theta: f64, max_iter: usize) -> Result<Outcome, CliFailure> {
    let mut manifest = RunManifest::new("solve");
    manifest.parameters = json!({
        "game": game_path.display().to_string(),
        "tol": tol,
        "theta": theta,
        "max_iter": max_iter,
    });
    let input = load_game_input(game_path, &mut manifest)?;
    let (handle, game) = match input {
        GameInput::Finite(game) => (OperatorHandle::from_game(game.clone()), Some(game)),
        GameInput::Operator { handle, .. } => (handle, None),
    };
    let opts = SolveOptions { tol, theta, max_iter, record_trace: true, stall: None };
    let sol = solver::solve_ergodic(&handle, &opts)?;

    let strategies = match &game {
        Some(game) => {
            let pair = solver::extract_strategies(game, sol.u.rep(), tol)?;
            json!({
                "sigma": pair.sigma,
                "tau": pair.tau,
                "epsilon": pair.epsilon,
                "guarantees": pair.guarantees.iter().map(|g| json!({
                    "state": g.state.one_based(),
                    "value": g.value,
                    "lower": g.lower,
                    "upper": g.upper,
                })).collect::<Vec<_>>(),
            })
        }
        None => Value::Null,
    };

    let mut document = json!({ "manifest": manifest.render() });
    let core = render_solution_core(&sol);
    document
        .as_object_mut()
        .expect("object")
        .extend(core.as_object().expect("object").clone());
    document.as_object_mut().expect("object").insert("strategies".into(), strategies);
    Ok(Outcome { document, exit_code: 0 })
}

fn cmd_perturb(
    game_path: &Path,
    trials: usize,
    seed: u64,
    tol: f64,
    theta: f64,
    max_iter: usize,
) -> Result<Outcome, CliFailure> {
    let mut manifest = RunManifest::new("perturb");
    manifest.seed = Some(seed);
    manifest.parameters = json!({
        "game": game_path.display().to_string(),
        "trials": trials,
        "tol": tol,
        "theta": theta,
        "max_iter": max_iter,
    });
    let input = load_game_input(game_path, &mut manifest)?;
    let handle = match input {
        GameInput::Finite(game) => OperatorHandle::from_game(game),
        GameInput::Operator { handle, .. } => handle,
    };
    let opts = SolveOptions {
        tol,
        theta,
        max_iter,
        record_trace: false,
        stall: Some(StallCheck::default()),
    };
    let report = solver::solvability_probe(&handle, trials, seed, &opts)?;
    let mut document = json!({ "manifest": manifest.render() });
    document
        .as_object_mut()
        .expect("object")
        .extend(render_probe(&report).as_object().expect("object").clone());
    Ok(Outcome { document, exit_code: 0 })
}

fn cmd_simulate(
    game_path: &Path,
    strategies_path: &Path,
    state: usize,
    horizon: usize,
    episodes: usize,
    seed: u64,
) -> Result<Outcome, CliFailure> {
    let mut manifest = RunManifest::new("simulate");
    manifest.seed = Some(seed);
    manifest.parameters = json!({
        "game": game_path.display().to_string(),
        "strategies": strategies_path.display().to_string(),
        "state": state,
        "horizon": horizon,
        "episodes": episodes,
    });
    let game = require_finite(load_game_input(game_path, &mut manifest)?)?;
    let bytes = read_bytes(strategies_path, &mut manifest)?;
    let value: Value = serde_json::from_slice(&bytes)
        .map_err(|e| CliFailure::input("parse", format!("{}: {e}", strategies_path.display())))?;
    // Accept both a bare {"sigma", "tau"} file and a full `solve` output.
    let holder = value.get("strategies").filter(|s| !s.is_null()).unwrap_or(&value);
    let extract = |key: &str| -> Result<Vec<Vec<f64>>, CliFailure> {
        let field = holder.get(key).ok_or_else(|| {
            CliFailure::input("schema", format!("strategies file lacks '{key}'"))
        })?;
        serde_json::from_value(field.clone())
            .map_err(|e| CliFailure::input("schema", format!("'{key}': {e}")))
    };
    let sigma = extract("sigma")?;
    let tau = extract("tau")?;
    let initial = StateId::from_one_based(state)
        .ok_or_else(|| CliFailure::input("invalid-argument", "states are numbered from 1"))?;
    let result = sim::simulate(&game, &sigma, &tau, initial, horizon, episodes, seed)?;
    Ok(Outcome {
        document: json!({
            "manifest": manifest.render(),
            "initial_state": result.initial_state.one_based(),
            "horizon": result.horizon,
            "episodes": result.episodes,
            "mean_payoff": result.mean_payoff,
            "stderr": result.stderr,
            "seed": result.seed,
        }),
        exit_code: 0,
    })
}
