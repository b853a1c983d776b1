//! The `finsynth` command-line tool.

pub mod spec_file;
pub mod trace_file;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{Map, Value};

use finsynth::automata::{dfa_to_dot, ltlf_to_dfa, make_initial_nonreentrant, Dfa, Limits};
use finsynth::logic::{collect_identifiers, parse, AtomPartition, EnvMove};
use finsynth::synthesis::{synthesize, ProblemSpec, SynthesisOutcome, Verdict};
use finsynth::transducer::MealyStrategy;
use finsynth::verify::{simulate_random, verify, VerifyVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NEGATIVE: i32 = 10;
pub const EXIT_ENV_INCONSISTENT: i32 = 11;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("spec: {0}")]
    Spec(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] finsynth::Error),
    #[error(transparent)]
    Logic(#[from] finsynth::logic::LogicError),
}

#[derive(Debug, Parser)]
#[command(name = "finsynth", version, about = "LTLf synthesis under reachability and safety specifications")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DfaFormat {
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a strategy for a spec file
    Synth {
        spec: PathBuf,
        /// Strategy output file; printed to stdout when omitted
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the strategy as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Print automaton sizes and fixpoint iterations
        #[arg(long)]
        stats: bool,
    },
    /// Decide realizability only
    Check {
        spec: PathBuf,
        #[arg(long)]
        stats: bool,
    },
    /// Print the minimal DFA of a formula
    Dfa {
        formula: String,
        /// Agent atoms (comma-separated); defaults to the formula's atoms
        #[arg(long, value_delimiter = ',')]
        agent: Vec<String>,
        /// Environment atoms (comma-separated)
        #[arg(long, value_delimiter = ',')]
        env: Vec<String>,
        #[arg(long, value_enum, default_value_t = DfaFormat::Dot)]
        format: DfaFormat,
        /// Print only state and final-state counts
        #[arg(long)]
        stats: bool,
        /// Clone the initial state so that it has no incoming edges
        #[arg(long)]
        nonreentrant: bool,
    },
    /// Check a strategy against a spec
    Verify { strategy: PathBuf, spec: PathBuf },
    /// Play a strategy and print the resulting letters
    Simulate {
        strategy: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Replay recorded environment inputs instead of random ones
        #[arg(long)]
        env_inputs: Option<PathBuf>,
        /// Report random-play statistics against this spec instead
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        episodes: usize,
    },
    /// Synthesize several spec files in parallel
    Batch {
        specs: Vec<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Directory for strategy files, named after each spec
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let mut out = String::new();
    let code = execute(&cli.command, &mut out);
    print!("{out}");
    match code {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

/// Runs one command, appending its standard output to `out`.
pub fn execute(cmd: &Command, out: &mut String) -> Result<i32, CliError> {
    let limits = Limits::from_env()?;
    match cmd {
        Command::Synth {
            spec,
            out: file,
            dot,
            stats,
        } => cmd_synth(spec, file.as_deref(), dot.as_deref(), *stats, &limits, out),
        Command::Check { spec, stats } => cmd_check(spec, *stats, &limits, out),
        Command::Dfa {
            formula,
            agent,
            env,
            format,
            stats,
            nonreentrant,
        } => cmd_dfa(formula, agent, env, *format, *stats, *nonreentrant, &limits, out),
        Command::Verify { strategy, spec } => cmd_verify(strategy, spec, &limits, out),
        Command::Simulate {
            strategy,
            steps,
            seed,
            env_inputs,
            spec,
            episodes,
        } => cmd_simulate(
            strategy,
            *steps,
            *seed,
            env_inputs.as_deref(),
            spec.as_deref(),
            *episodes,
            &limits,
            out,
        ),
        Command::Batch {
            specs,
            jobs,
            out_dir,
        } => cmd_batch(specs, *jobs, out_dir.as_deref(), &limits, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_spec(path: &Path) -> Result<ProblemSpec, CliError> {
    spec_file::parse_spec(&read(path)?)
}

pub fn load_strategy(path: &Path) -> Result<MealyStrategy, CliError> {
    Ok(MealyStrategy::from_json(&read(path)?)?)
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Realizable => EXIT_OK,
        Verdict::Unrealizable => EXIT_NEGATIVE,
        Verdict::EnvInconsistent => EXIT_ENV_INCONSISTENT,
    }
}

fn report(outcome: &SynthesisOutcome, stats: bool, out: &mut String) {
    writeln!(out, "{}", outcome.verdict).unwrap();
    if let Some(alg) = outcome.algorithm {
        writeln!(out, "algorithm: {alg}").unwrap();
    }
    if stats {
        out.push_str(&outcome.diagnostics.to_string());
        if let Some(m) = &outcome.strategy {
            writeln!(out, "strategy: {} states", m.num_states()).unwrap();
        }
    }
}

pub fn cmd_synth(
    spec: &Path,
    file: Option<&Path>,
    dot: Option<&Path>,
    stats: bool,
    limits: &Limits,
    out: &mut String,
) -> Result<i32, CliError> {
    let spec = load_spec(spec)?;
    let outcome = synthesize(&spec, limits)?;
    report(&outcome, stats, out);
    if let Some(m) = &outcome.strategy {
        match file {
            Some(path) => write(path, &m.to_json())?,
            None => out.push_str(&m.to_json()),
        }
        if let Some(path) = dot {
            write(path, &m.to_dot())?;
        }
    }
    Ok(verdict_code(outcome.verdict))
}

pub fn cmd_check(spec: &Path, stats: bool, limits: &Limits, out: &mut String) -> Result<i32, CliError> {
    let spec = load_spec(spec)?;
    let outcome = synthesize(&spec, limits)?;
    report(&outcome, stats, out);
    Ok(verdict_code(outcome.verdict))
}

fn dfa_json(m: &Dfa) -> String {
    let atoms = m.ts.atoms();
    let mut doc = Map::new();
    let mut a = Map::new();
    a.insert("agent".into(), atoms.agent().into());
    a.insert("env".into(), atoms.env().into());
    doc.insert("atoms".into(), Value::Object(a));
    doc.insert("states".into(), m.num_states().into());
    doc.insert("initial".into(), m.ts.initial().into());
    doc.insert("finals".into(), m.finals.ones().collect::<Vec<_>>().into());
    let mut delta = Map::new();
    for q in 0..m.num_states() {
        let mut row = Map::new();
        for (z, &t) in m.ts.row(q).iter().enumerate() {
            row.insert(atoms.format_letter(z as u32), t.into());
        }
        delta.insert(q.to_string(), Value::Object(row));
    }
    doc.insert("delta".into(), Value::Object(delta));
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
    s.push('\n');
    s
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_dfa(
    formula: &str,
    agent: &[String],
    env: &[String],
    format: DfaFormat,
    stats: bool,
    nonreentrant: bool,
    limits: &Limits,
    out: &mut String,
) -> Result<i32, CliError> {
    let atoms = if agent.is_empty() && env.is_empty() {
        AtomPartition::new(collect_identifiers(formula)?, Vec::<String>::new())?
    } else {
        AtomPartition::new(agent.to_vec(), env.to_vec())?
    };
    let phi = parse(formula, &atoms)?;
    let mut m = ltlf_to_dfa(&phi, &atoms, limits)?;
    if nonreentrant {
        m = make_initial_nonreentrant(&m);
    }
    if stats {
        writeln!(out, "states: {}", m.num_states()).unwrap();
        writeln!(out, "finals: {}", m.num_finals()).unwrap();
    } else {
        match format {
            DfaFormat::Dot => out.push_str(&dfa_to_dot(&m)),
            DfaFormat::Json => out.push_str(&dfa_json(&m)),
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(strategy: &Path, spec: &Path, limits: &Limits, out: &mut String) -> Result<i32, CliError> {
    let m = load_strategy(strategy)?;
    let spec = load_spec(spec)?;
    let report = verify(&m, &spec, limits)?;
    match report.verdict {
        VerifyVerdict::Pass => {
            writeln!(out, "Pass ({} regime, {} nodes)", report.regime, report.explored).unwrap();
            Ok(EXIT_OK)
        }
        VerifyVerdict::Fail(cx) => {
            writeln!(out, "Fail: {} ({} regime)", cx.reason, report.regime).unwrap();
            writeln!(out, "prefix ({} letters):", cx.prefix.len()).unwrap();
            out.push_str(&trace_file::format_env_inputs(&cx.prefix, &spec.atoms));
            writeln!(out, "cycle ({} letters):", cx.cycle.len()).unwrap();
            out.push_str(&trace_file::format_env_inputs(&cx.cycle, &spec.atoms));
            Ok(EXIT_NEGATIVE)
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_simulate(
    strategy: &Path,
    steps: Option<usize>,
    seed: u64,
    env_inputs: Option<&Path>,
    spec: Option<&Path>,
    episodes: usize,
    limits: &Limits,
    out: &mut String,
) -> Result<i32, CliError> {
    let m = load_strategy(strategy)?;
    let atoms = m.atoms().clone();
    if let Some(spec) = spec {
        let spec = load_spec(spec)?;
        let horizon = steps.unwrap_or(200);
        if horizon == 0 {
            return Err(CliError::Usage("--steps must be at least 1".into()));
        }
        let r = simulate_random(&m, &spec, episodes, horizon, seed, limits)?;
        writeln!(out, "regime: {}", r.regime).unwrap();
        for (name, s) in [("uniform", &r.uniform), ("region", &r.region)] {
            writeln!(
                out,
                "{name}: episodes {} task-safety-violations {} task-reached {} env-reach-reached {} env-safety-violations {} definite-violations {}",
                s.episodes,
                s.task_safe_violations,
                s.task_reached,
                s.env_reach_reached,
                s.env_safe_violations,
                s.definite_violations
            )
            .unwrap();
        }
        return Ok(if r.region.definite_violations == 0 {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        });
    }
    let inputs: Vec<EnvMove> = match env_inputs {
        Some(path) => {
            let recorded = trace_file::parse_env_inputs(&read(path)?, &atoms)?;
            match steps {
                Some(n) if n > recorded.len() => {
                    return Err(CliError::Usage(format!(
                        "{n} steps requested but only {} inputs recorded",
                        recorded.len()
                    )))
                }
                Some(n) => recorded[..n].to_vec(),
                None => recorded,
            }
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let nx = atoms.num_env_moves() as EnvMove;
            (0..steps.unwrap_or(10)).map(|_| rng.gen_range(0..nx)).collect()
        }
    };
    let play = m.run(&inputs);
    out.push_str(&trace_file::format_letters(&play.letters, &atoms));
    Ok(EXIT_OK)
}

pub fn cmd_batch(
    specs: &[PathBuf],
    jobs: Option<usize>,
    out_dir: Option<&Path>,
    limits: &Limits,
    out: &mut String,
) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let results: Vec<Result<SynthesisOutcome, CliError>> = pool.install(|| {
        specs
            .par_iter()
            .map(|p| Ok(synthesize(&load_spec(p)?, limits)?))
            .collect()
    });
    let mut code = EXIT_OK;
    for (path, res) in specs.iter().zip(results) {
        match res {
            Ok(o) => {
                writeln!(out, "{}: {}", path.display(), o.verdict).unwrap();
                if let (Some(dir), Some(m)) = (out_dir, &o.strategy) {
                    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
                    write(&dir.join(format!("{stem}.strategy.json")), &m.to_json())?;
                }
            }
            Err(e) => {
                writeln!(out, "{}: error: {e}", path.display()).unwrap();
                code = EXIT_ERROR;
            }
        }
    }
    Ok(code)
}
