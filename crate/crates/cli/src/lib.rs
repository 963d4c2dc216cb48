//! Command-line front end: every command writes one JSON report to stdout
//! and human-readable prose to stderr.
//!
//! Exit codes: 0 on success (equal, valid, sound), 1 on a negative verdict,
//! 2 on input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use deltazx::circuit::{circuit_to_diagram, unitary, Circuit};
use deltazx::functors::{zw_to_zx, zx_to_zw};
use deltazx::json::{diagram_from_str, diagram_to_json, equality_to_json, matrix_from_json, matrix_to_json};
use deltazx::rewrite::derivation::ReplayResult;
use deltazx::rewrite::{replay_derivation, ruleset, simplify, verify_rule_soundness, Derivation, VerifyConfig};
use deltazx::semantics::{compare_matrices, interpret, interpret_auto, Matrix, DEFAULT_TOL};
use deltazx::synth::synthesize;
use deltazx::{Calculus, Diagram, Equality, Mode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] deltazx::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Zx,
    Zw,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(name = "deltazx", version, about = "Exact rewriting and verification for ΔZX and ZW diagrams")]
pub struct CliConfig {
    /// Evaluation mode; by default exact when every angle allows it.
    #[arg(long, value_enum, global = true)]
    pub mode: Option<ModeArg>,
    /// Tolerance for float comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for randomised sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest parametric arity tried by verify-axioms.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_arity: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prints the matrix of a diagram.
    Eval { diagram: PathBuf },
    /// Compares the matrices of two diagrams.
    Equal { first: PathBuf, second: PathBuf },
    /// Translates between ΔZX and ZW.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        diagram: PathBuf,
    },
    /// Checks every rule of a ruleset on both sides' matrices.
    VerifyAxioms {
        #[arg(long)]
        ruleset: String,
        /// Random samples per rule with real parameters.
        #[arg(long, default_value_t = 10)]
        float_samples: usize,
    },
    /// Builds a π-fragment diagram for a matrix.
    Synth { matrix: PathBuf },
    /// Greedily lowers the node count and prints a replayable derivation.
    Simplify {
        #[arg(long)]
        ruleset: String,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        diagram: PathBuf,
    },
    /// Replays a derivation step by step.
    Replay { derivation: PathBuf },
    /// Turns a circuit into a diagram and checks it against direct simulation.
    Circuit { circuit: PathBuf },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn with_path<T>(path: &Path, r: deltazx::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input { path: path.to_path_buf(), message: e.to_string() })
}

fn load_diagram(path: &Path) -> Result<Diagram, CliError> {
    with_path(path, diagram_from_str(&read(path)?))
}

fn load_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input { path: path.to_path_buf(), message: e.to_string() })
}

fn evaluate(d: &Diagram, mode: Option<ModeArg>) -> deltazx::Result<Matrix> {
    match mode {
        Some(m) => interpret(d, m.into()),
        None => interpret_auto(d),
    }
}

/// Rows of the matrix as text, e.g. `[[1,1],[0,1]]`.
fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = (0..m.cols())
                .map(|c| match m {
                    Matrix::Exact(d) => d.get(r, c).to_string(),
                    Matrix::Float(d) => {
                        let z = d.get(r, c);
                        if z.im.abs() < 1e-12 {
                            format!("{}", z.re)
                        } else {
                            format!("{}{:+}i", z.re, z.im)
                        }
                    }
                })
                .collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

struct Report {
    code: i32,
    json: Value,
    prose: String,
}

fn execute(cfg: &CliConfig) -> Result<Report, CliError> {
    let ok = |json: Value, prose: String| Ok(Report { code: 0, json, prose });
    match &cfg.command {
        Command::Eval { diagram } => {
            let d = load_diagram(diagram)?;
            let m = with_path(diagram, evaluate(&d, cfg.mode))?;
            let text = matrix_text(&m);
            let mut json = matrix_to_json(&m);
            json["text"] = json!(text);
            ok(json, format!("{}×{} matrix: {text}", m.rows(), m.cols()))
        }
        Command::Equal { first, second } => {
            let (a, b) = (load_diagram(first)?, load_diagram(second)?);
            let ma = with_path(first, evaluate(&a, cfg.mode))?;
            let mb = with_path(second, evaluate(&b, cfg.mode))?;
            if (ma.rows(), ma.cols()) != (mb.rows(), mb.cols()) {
                return Err(CliError::Core(deltazx::Error::TypeMismatch(format!(
                    "{}→{} vs {}→{}",
                    a.n_inputs, a.n_outputs, b.n_inputs, b.n_outputs
                ))));
            }
            let eq = compare_matrices(&ma, &mb, cfg.tol);
            let code = if eq.is_equal() { 0 } else { 1 };
            let prose = match &eq {
                Equality::Equal => "Equal".to_string(),
                Equality::NotEqual { row, col, .. } => format!("NotEqual: entries differ at ({row},{col})"),
                Equality::EqualUpToGlobalScalar(s) => format!("NotEqual: equal up to the scalar {s}"),
            };
            Ok(Report { code, json: equality_to_json(&eq), prose })
        }
        Command::Translate { to, diagram } => {
            let d = load_diagram(diagram)?;
            let out = match (to, d.calculus) {
                (Target::Zx, Calculus::Zw) => with_path(diagram, zw_to_zx(&d))?,
                (Target::Zw, Calculus::Zx) => with_path(diagram, zx_to_zw(&d))?,
                _ => d.clone(),
            };
            let prose = format!("{} nodes → {} nodes", d.node_count(), out.node_count());
            ok(diagram_to_json(&out), prose)
        }
        Command::VerifyAxioms { ruleset: name, float_samples } => {
            let rules = ruleset(name)?;
            let vc = VerifyConfig { max_arity: cfg.max_arity, float_samples: *float_samples, seed: cfg.seed, tol: cfg.tol };
            let reports: Vec<_> = rules.rules.iter().map(|r| verify_rule_soundness(r, &vc)).collect();
            let unsound: Vec<&str> = reports.iter().filter(|r| !r.is_sound()).map(|r| r.rule.as_str()).collect();
            let json = json!({
                "ruleset": rules.name,
                "sound": unsound.is_empty(),
                "rules": reports.iter().map(|r| json!({
                    "rule": r.rule,
                    "checked": r.checked,
                    "failures": r.failures.iter().map(|f| json!({
                        "legs": f.legs,
                        "bind": deltazx::json::binding_to_json(&f.bind),
                        "mode": f.mode.to_string(),
                        "detail": f.detail,
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            let checked: usize = reports.iter().map(|r| r.checked).sum();
            if unsound.is_empty() {
                ok(json, format!("all rules sound ({} rules, {checked} instances)", reports.len()))
            } else {
                Ok(Report { code: 1, json, prose: format!("unsound rules: {}", unsound.join(", ")) })
            }
        }
        Command::Synth { matrix } => {
            let m = with_path(matrix, matrix_from_json(&load_json(matrix)?))?;
            let d = with_path(matrix, synthesize(&m))?;
            ok(diagram_to_json(&d), format!("synthesised a diagram with {} nodes", d.node_count()))
        }
        Command::Simplify { ruleset: name, budget, diagram } => {
            let rules = ruleset(name)?;
            let d = load_diagram(diagram)?;
            let (out, deriv) = simplify(&d, &rules, *budget);
            let prose = format!("{} nodes → {} nodes in {} steps", d.node_count(), out.node_count(), deriv.steps.len());
            ok(json!({ "diagram": diagram_to_json(&out), "derivation": deriv.to_json() }), prose)
        }
        Command::Replay { derivation } => {
            let deriv = with_path(derivation, Derivation::from_json(&load_json(derivation)?))?;
            let rules = with_path(derivation, ruleset(&deriv.ruleset))?;
            let res = with_path(derivation, replay_derivation(&deriv, &rules))?;
            Ok(match res {
                ReplayResult::Valid => Report {
                    code: 0,
                    json: json!({ "result": "Valid", "steps": deriv.steps.len() }),
                    prose: format!("Valid ({} steps)", deriv.steps.len()),
                },
                ReplayResult::InvalidStep { index, reason } => Report {
                    code: 1,
                    json: json!({ "result": "Invalid", "step": index, "reason": reason }),
                    prose: format!("Invalid at step {index}: {reason}"),
                },
            })
        }
        Command::Circuit { circuit } => {
            let c = with_path(circuit, Circuit::parse(&read(circuit)?))?;
            let d = circuit_to_diagram(&c);
            let m = interpret(&d, Mode::Exact)?;
            let eq = compare_matrices(&m, &Matrix::Exact(unitary(&c)), cfg.tol);
            let code = if eq.is_equal() { 0 } else { 1 };
            let json = json!({
                "qubits": c.qubits,
                "gates": c.gates.len(),
                "diagram": diagram_to_json(&d),
                "check": equality_to_json(&eq),
            });
            let prose = format!(
                "{} qubits, {} gates, {} nodes; matches direct simulation: {}",
                c.qubits,
                c.gates.len(),
                d.node_count(),
                eq.is_equal()
            );
            Ok(Report { code, json, prose })
        }
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cfg) {
        Ok(r) => {
            let mut stdout = serde_json::to_string(&r.json).expect("reports serialise");
            stdout.push('\n');
            Outcome { code: r.code, stdout, stderr: format!("{}\n", r.prose) }
        }
        Err(e) => {
            let mut stderr = String::new();
            let _ = writeln!(stderr, "error: {e}");
            let stdout = format!("{}\n", json!({ "error": e.to_string() }));
            Outcome { code: 2, stdout, stderr }
        }
    }
}
