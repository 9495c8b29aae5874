//! `gscert` — the command-line entry point over the witness toolkit.
//!
//! Subcommands: `build` (construct a witness), `bounds` (exact classical and
//! quantum bounds), `evaluate` (witness value of a realization), `check`
//! (commutation-structure report), `certify` (fidelity bounds from noisy
//! statistics, a block noise model, or a realization),
//! `validate-robustness` (randomized verification of the certification
//! theorems), and `export-hypergraph` (compatibility structure as DOT or
//! JSON).
//!
//! Exit codes separate tool failures from verification findings so CI can
//! tell them apart:
//!
//! - 0 — success;
//! - 1 — usage, I/O, or schema error (the tool could not do the work);
//! - 2 — the work succeeded and found a violation (inadmissible
//!   realization, certification bound violated, validation trial failed).
//!
//! Output is deterministic: the same command line (including `--seed`)
//! produces byte-identical output; `--jobs` changes runtime only.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gscert_core::{
    certify_jordan, certify_realization, certify_statistics, classical_bound_fast, quantum_bound,
    validate_robustness, Backend, Inequality, JordanBlockSpec, Realization, RobustnessReport,
    Statistics, ValidationConfig,
};

/// Parsed command line. One invocation runs exactly one subcommand; shared
/// flags control worker count and where output goes.
#[derive(Debug, Parser)]
#[command(
    name = "gscert",
    version,
    about = "Scalable contextuality witnesses: exact bounds, stabilizer verification, and fidelity certification",
    max_term_width = 100
)]
struct RunConfig {
    /// Worker threads for parallel enumeration and Monte-Carlo sweeps
    /// (affects runtime only, never output).
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct the n-observable witness expression.
    Build {
        /// Number of observable pairs (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// Exact classical and quantum bounds of the witness.
    Bounds {
        /// Number of observable pairs (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Also run the exhaustive ±1-assignment enumeration (n ≤ 12) and
        /// cross-check it against the reduced scan; a mismatch exits 2.
        #[arg(long)]
        brute_force: bool,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// Witness value reached by a realization.
    Evaluate {
        /// Number of observable pairs; required for `--realization ideal`.
        #[arg(long)]
        n: Option<usize>,
        /// `ideal`, `alt3`, or a path to a realization JSON file.
        #[arg(long)]
        realization: String,
        /// Engine for the built-in `ideal` realization.
        #[arg(long, value_enum, default_value_t = BackendArg::Symbolic)]
        backend: BackendArg,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },

    /// Commutation-structure report of a realization; exits 2 if any
    /// required-commuting pair fails.
    Check {
        /// Number of observable pairs; required for `--realization ideal`.
        #[arg(long)]
        n: Option<usize>,
        /// `ideal`, `alt3`, or a path to a realization JSON file.
        #[arg(long)]
        realization: String,
        /// Engine for the built-in `ideal` realization.
        #[arg(long, value_enum, default_value_t = BackendArg::Symbolic)]
        backend: BackendArg,
        /// Largest acceptable required-commuting residual.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// Fidelity certification: ε extraction and lower bounds. Exactly one
    /// input source must be given; exits 2 if a true fidelity (available
    /// for `--jordan`) violates its certified bound.
    Certify {
        /// Path to measured statistics JSON.
        #[arg(long, value_name = "PATH", conflicts_with_all = ["jordan", "realization"])]
        stats: Option<PathBuf>,
        /// Path to a block noise-model JSON; also reports true fidelities.
        #[arg(long, value_name = "PATH", conflicts_with = "realization")]
        jordan: Option<PathBuf>,
        /// `ideal`, `alt3`, or a path to a realization JSON file.
        #[arg(long)]
        realization: Option<String>,
        /// Number of observable pairs; required for `--realization ideal`.
        #[arg(long)]
        n: Option<usize>,
        /// Engine for the built-in `ideal` realization.
        #[arg(long, value_enum, default_value_t = BackendArg::Symbolic)]
        backend: BackendArg,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// Randomized validation of the certification theorems on seeded block
    /// noise models; exits 2 if any trial violates a bound.
    ValidateRobustness {
        /// Number of observable pairs (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Number of random noise models to draw.
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Seed for the deterministic per-trial random streams.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest per-pair angle drawn.
        #[arg(long, default_value_t = 0.3)]
        max_angle: f64,
        /// Largest number of blocks drawn per model.
        #[arg(long, default_value_t = 8)]
        max_blocks: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },

    /// The compatibility hypergraph of the witness contexts.
    ExportHypergraph {
        /// Number of observable pairs (n ≥ 3).
        #[arg(long)]
        n: usize,
        /// Output format (DOT renders hyperedges as star-expansions,
        /// positive contexts red, negative blue).
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

/// Output format. Not every command supports every format; unsupported
/// combinations are usage errors (exit 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Machine-readable JSON matching the published schemas.
    Json,
    /// Human-readable text.
    Text,
    /// Graphviz DOT (hypergraph export only).
    Dot,
}

/// Engine selector for built-in realizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    /// Exact stabilizer algebra; scales to hundreds of sites.
    Symbolic,
    /// Explicit matrices; capped at 12 qubits.
    Dense,
}

impl From<BackendArg> for Backend {
    fn from(arg: BackendArg) -> Backend {
        match arg {
            BackendArg::Symbolic => Backend::Symbolic,
            BackendArg::Dense => Backend::Dense,
        }
    }
}

/// What a successful run concluded.
enum Verdict {
    /// All requested checks passed (or the command was purely generative).
    Pass,
    /// The tool worked and found a genuine violation — exit 2.
    ViolationFound,
}

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(err) => {
            // `--help` and `--version` land here too; they are not errors.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(config) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::ViolationFound) => ExitCode::from(2),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(config: RunConfig) -> Result<Verdict> {
    if let Some(jobs) = config.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let (text, verdict) = dispatch(&config.command)?;
    emit(config.output.as_deref(), &text)?;
    Ok(verdict)
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing output to {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("writing stdout")
        }
    }
}

fn dispatch(command: &Command) -> Result<(String, Verdict)> {
    match command {
        Command::Build { n, format } => build(*n, *format),
        Command::Bounds {
            n,
            brute_force,
            format,
        } => bounds(*n, *brute_force, *format),
        Command::Evaluate {
            n,
            realization,
            backend,
            format,
        } => evaluate(*n, realization, *backend, *format),
        Command::Check {
            n,
            realization,
            backend,
            tolerance,
            format,
        } => check(*n, realization, *backend, *tolerance, *format),
        Command::Certify {
            stats,
            jordan,
            realization,
            n,
            backend,
            format,
        } => certify(
            stats.as_deref(),
            jordan.as_deref(),
            realization.as_deref(),
            *n,
            *backend,
            *format,
        ),
        Command::ValidateRobustness {
            n,
            trials,
            seed,
            max_angle,
            max_blocks,
            format,
        } => validate(*n, *trials, *seed, *max_angle, *max_blocks, *format),
        Command::ExportHypergraph { n, format } => export_hypergraph(*n, *format),
    }
}

/// Rejects `dot` for commands that have no graph rendering.
fn text_or_json(format: Format, command: &str) -> Result<Format> {
    if format == Format::Dot {
        bail!("`{command}` does not support the dot format");
    }
    Ok(format)
}

fn build(n: usize, format: Format) -> Result<(String, Verdict)> {
    let ineq = Inequality::build(n)?;
    let text = match text_or_json(format, "build")? {
        Format::Json => format!("{}\n", serde_json::to_string(&ineq)?),
        _ => {
            let mut out = format!(
                "I_{n}: alpha = {}, {} terms, classical <= {}, quantum <= {}\n",
                ineq.alpha(),
                ineq.terms().len(),
                ineq.classical_bound(),
                ineq.quantum_bound()
            );
            for term in ineq.terms() {
                out.push_str(&term.text(n));
                out.push('\n');
            }
            out
        }
    };
    Ok((text, Verdict::Pass))
}

fn bounds(n: usize, brute_force: bool, format: Format) -> Result<(String, Verdict)> {
    let classical = classical_bound_fast(n)?;
    let quantum = quantum_bound(n)?;
    let brute = brute_force
        .then(|| Inequality::build(n)?.classical_bound_bruteforce())
        .transpose()?;
    let verdict = match brute {
        Some(b) if b != classical => Verdict::ViolationFound,
        _ => Verdict::Pass,
    };
    let text = match text_or_json(format, "bounds")? {
        Format::Json => {
            let mut value = serde_json::json!({ "classical": classical, "quantum": quantum });
            if let Some(b) = brute {
                value["classical_brute"] = serde_json::json!(b);
            }
            format!("{value}\n")
        }
        _ => {
            let mut out = format!("classical: {classical}\nquantum: {quantum}\n");
            if let Some(b) = brute {
                out.push_str(&format!("classical (brute force): {b}\n"));
            }
            out
        }
    };
    Ok((text, verdict))
}

/// Resolves `ideal`, `alt3`, or a file path to a realization.
fn load_realization(spec: &str, n: Option<usize>, backend: BackendArg) -> Result<Realization> {
    match spec {
        "ideal" => {
            let n = n.ok_or_else(|| anyhow!("--realization ideal requires --n"))?;
            Ok(Realization::ideal(n, backend.into())?)
        }
        "alt3" => {
            if let Some(n) = n {
                if n != 3 {
                    bail!("the alternative realization is three-slot; --n {n} conflicts");
                }
            }
            Ok(Realization::alternative_3()?)
        }
        path => {
            let raw = fs::read_to_string(path)
                .with_context(|| format!("reading realization file {path}"))?;
            let realization: Realization = serde_json::from_str(&raw)
                .with_context(|| format!("parsing realization file {path}"))?;
            if let Some(n) = n {
                if realization.n() != n {
                    bail!(
                        "realization file has n = {}, but --n {n} was given",
                        realization.n()
                    );
                }
            }
            Ok(realization)
        }
    }
}

fn evaluate(
    n: Option<usize>,
    spec: &str,
    backend: BackendArg,
    format: Format,
) -> Result<(String, Verdict)> {
    let realization = load_realization(spec, n, backend)?;
    let ineq = Inequality::build(realization.n())?;
    // The symbolic engine is exact; print integers as integers.
    let value = match realization.backend() {
        Backend::Symbolic => serde_json::json!(realization.evaluate_exact(&ineq)?),
        Backend::Dense => serde_json::json!(realization.evaluate(&ineq)?),
    };
    let text = match text_or_json(format, "evaluate")? {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({
                "n": realization.n(),
                "backend": match realization.backend() {
                    Backend::Symbolic => "symbolic",
                    Backend::Dense => "dense",
                },
                "value": value,
                "quantum_bound": quantum_bound(realization.n())?,
            })
        ),
        _ => format!("{value}\n"),
    };
    Ok((text, Verdict::Pass))
}

fn check(
    n: Option<usize>,
    spec: &str,
    backend: BackendArg,
    tolerance: f64,
    format: Format,
) -> Result<(String, Verdict)> {
    let realization = load_realization(spec, n, backend)?;
    let report = realization.compatibility_report()?;
    let ok = report.max_commutation_residual <= tolerance;
    let text = match text_or_json(format, "check")? {
        Format::Json => format!("{}\n", serde_json::to_string(&report)?),
        _ => {
            let mut out = format!(
                "admissible: {} (max required-commuting residual {} vs tolerance {tolerance})\n",
                ok, report.max_commutation_residual
            );
            for pair in &report.commuting_pairs {
                if pair.residual > tolerance {
                    out.push_str(&format!(
                        "  [{}, {}] residual {}\n",
                        pair.left, pair.right, pair.residual
                    ));
                }
            }
            out.push_str("same-index anticommutator diagnostics:\n");
            for pair in &report.same_index {
                out.push_str(&format!(
                    "  {{{}, {}}} residual {}\n",
                    pair.left, pair.right, pair.residual
                ));
            }
            out
        }
    };
    Ok((
        text,
        if ok {
            Verdict::Pass
        } else {
            Verdict::ViolationFound
        },
    ))
}

fn certify(
    stats: Option<&std::path::Path>,
    jordan: Option<&std::path::Path>,
    realization: Option<&str>,
    n: Option<usize>,
    backend: BackendArg,
    format: Format,
) -> Result<(String, Verdict)> {
    let report = match (stats, jordan, realization) {
        (Some(path), None, None) => {
            let raw = fs::read_to_string(path)
                .with_context(|| format!("reading statistics file {}", path.display()))?;
            let stats: Statistics = serde_json::from_str(&raw)
                .with_context(|| format!("parsing statistics file {}", path.display()))?;
            certify_statistics(&stats)?
        }
        (None, Some(path), None) => {
            let raw = fs::read_to_string(path)
                .with_context(|| format!("reading noise-model file {}", path.display()))?;
            let spec: JordanBlockSpec = serde_json::from_str(&raw)
                .with_context(|| format!("parsing noise-model file {}", path.display()))?;
            certify_jordan(&spec)?
        }
        (None, None, Some(spec)) => certify_realization(&load_realization(spec, n, backend)?)?,
        _ => bail!("certify needs exactly one of --stats, --jordan, --realization"),
    };
    let verdict = if report.bound_violations.is_empty() {
        Verdict::Pass
    } else {
        Verdict::ViolationFound
    };
    let text = match text_or_json(format, "certify")? {
        Format::Json => format!("{}\n", serde_json::to_string(&report)?),
        _ => render_report(&report),
    };
    Ok((text, verdict))
}

fn render_report(report: &RobustnessReport) -> String {
    let mut out = format!(
        "n: {}\nepsilon: {}\nstate fidelity >= {} (eps0 = {})\nA fidelity >= {} (eps1 = {})\nB fidelity >= {} (eps2 = {})\n",
        report.n,
        report.epsilon,
        report.fid_state_bound,
        report.eps0,
        report.fid_a_bound,
        report.eps1,
        report.fid_b_bound,
        report.eps2,
    );
    if report.vacuous {
        out.push_str("note: at this epsilon the bounds certify nothing (<= 0)\n");
    }
    if let Some(actual) = report.actual_fid_state {
        out.push_str(&format!("actual state fidelity: {actual}\n"));
    }
    if let Some(actual) = &report.actual_fid_b {
        for (i, f) in actual.iter().enumerate() {
            out.push_str(&format!("actual B{} fidelity: {f}\n", i + 1));
        }
    }
    for violation in &report.bound_violations {
        out.push_str(&format!("VIOLATION: {violation}\n"));
    }
    out
}

fn validate(
    n: usize,
    trials: usize,
    seed: u64,
    max_angle: f64,
    max_blocks: usize,
    format: Format,
) -> Result<(String, Verdict)> {
    let config = ValidationConfig {
        n,
        trials,
        max_angle,
        max_blocks,
        seed,
    };
    let outcome = validate_robustness(&config)?;
    let verdict = if outcome.violations.is_empty() {
        Verdict::Pass
    } else {
        Verdict::ViolationFound
    };
    let text = match text_or_json(format, "validate-robustness")? {
        Format::Json => format!(
            "{}\n",
            serde_json::json!({ "config": config, "outcome": outcome })
        ),
        _ => {
            let mut out = format!(
                "trials: {}\nviolations: {}\nmin state-fidelity margin: {}\nmin B-fidelity margin: {}\nmax anticommutator ratio: {}\nmax epsilon drawn: {}\n",
                outcome.trials,
                outcome.violations.len(),
                outcome.min_state_margin,
                outcome.min_b_margin,
                outcome.max_anticommutator_ratio,
                outcome.max_epsilon,
            );
            for violation in &outcome.violations {
                out.push_str(&format!(
                    "VIOLATION (trial {}): {}\n",
                    violation.trial, violation.what
                ));
            }
            out
        }
    };
    Ok((text, verdict))
}

fn export_hypergraph(n: usize, format: Format) -> Result<(String, Verdict)> {
    let hypergraph = Inequality::build(n)?.hypergraph();
    let text = match format {
        Format::Dot => hypergraph.to_dot(),
        Format::Json => format!("{}\n", serde_json::to_string(&hypergraph)?),
        Format::Text => {
            let mut out = format!(
                "{} vertices, {} contexts\n",
                hypergraph.vertices.len(),
                hypergraph.hyperedges.len()
            );
            for edge in &hypergraph.hyperedges {
                let sign = if edge.sign > 0 { '+' } else { '-' };
                out.push_str(&format!("{sign} {}\n", edge.labels.join(" ")));
            }
            out
        }
    };
    Ok((text, Verdict::Pass))
}
