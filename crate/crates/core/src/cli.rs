//! Command-line driver. [`run`] returns the process exit code.

use crate::config::{EngineConfig, Heuristic, Simplify};
use crate::error::Error;
use crate::formula::depth;
use crate::game_oracle::solve;
use crate::gen::{spec_corpus, GenConfig};
use crate::parser::{parse, render, render_spec, SpecFile};
use crate::synthesis::{default_horizon, extract, machine_from_json, machine_to_dot, machine_to_json, verify};
use crate::tableau::{decide, to_dot, Verdict};
use crate::tnf::tnf;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_REALIZABLE: i32 = 0;
pub const EXIT_UNREALIZABLE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_DISAGREE: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_PARSE: i32 = 5;
pub const EXIT_BUDGET: i32 = 6;
pub const EXIT_STRATEGY: i32 = 7;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "tabsynth", version, about = "Realizability checking and synthesis for bounded safety LTL")]
struct Cli {
    #[command(flatten)]
    engine: EngineArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HeuristicArg {
    Weakest,
    Declared,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SimplifyArg {
    None,
    Subsume,
}

#[derive(Args, Debug)]
struct EngineArgs {
    /// Maximum number of tableau nodes.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_nodes: usize,
    /// Maximum number of minimal coverings at a single node.
    #[arg(long, global = true, default_value_t = 64)]
    max_coverings: usize,
    /// Maximum number of environment valuations.
    #[arg(long, global = true, default_value_t = 65_536)]
    max_env_space: u64,
    #[arg(long, global = true, value_enum, default_value_t = HeuristicArg::Weakest)]
    heuristic: HeuristicArg,
    /// Reuse the verdict of an open sibling whose successor label entails ours.
    #[arg(long, global = true)]
    prune_siblings: bool,
    #[arg(long, global = true, value_enum, default_value_t = SimplifyArg::Subsume)]
    simplify: SimplifyArg,
    /// Maximum number of game arena edges.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    oracle_budget: u64,
    /// Build only the reachable part of the game arena.
    #[arg(long, global = true)]
    oracle_lazy: bool,
    /// Verification horizon (default 2·(depth+2)).
    #[arg(long, global = true)]
    horizon: Option<usize>,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            max_nodes: self.max_nodes.max(1),
            max_coverings: self.max_coverings.max(1),
            max_env_space: self.max_env_space.max(1),
            heuristic: match self.heuristic {
                HeuristicArg::Weakest => Heuristic::Weakest,
                HeuristicArg::Declared => Heuristic::Declared,
            },
            prune_siblings: self.prune_siblings,
            simplify: match self.simplify {
                SimplifyArg::None => Simplify::None,
                SimplifyArg::Subsume => Simplify::Subsume,
            },
            oracle_budget: self.oracle_budget.max(1),
            oracle_lazy: self.oracle_lazy,
            horizon: self.horizon,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide realizability with the tableau.
    Check { file: PathBuf },
    /// Decide realizability and extract a strategy.
    Synth {
        file: PathBuf,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
        /// Write the tableau as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the strategy as Graphviz.
        #[arg(long)]
        machine_dot: Option<PathBuf>,
    },
    /// Print the terse normal form of the safety body.
    Tnf { file: PathBuf },
    /// Decide realizability with the explicit safety game.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// Run tableau and game and compare their verdicts.
    Crosscheck { file: PathBuf },
    /// Check a strategy against a specification.
    Verify {
        file: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
    },
    /// Cross-check the engines on seeded random specifications.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Io { .. } => EXIT_IO,
            Error::Parse(_) => EXIT_PARSE,
            Error::Budget(_) => EXIT_BUDGET,
            Error::NotOpen => EXIT_UNREALIZABLE,
            Error::Strategy(_) | Error::Json(_) => EXIT_STRATEGY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<SpecFile, Error> {
    let text = read(path)?;
    parse(&text).map_err(|e| {
        let mut e = e;
        e.message = format!("{}: {}", path.display(), e.message);
        Error::Parse(e)
    })
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Open => EXIT_REALIZABLE,
        Verdict::Closed => EXIT_UNREALIZABLE,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let cfg = cli.engine.config();
    let io = |e: std::io::Error| Failure {
        code: EXIT_IO,
        message: e.to_string(),
    };
    match cli.command {
        Command::Check { file } => {
            let spec = load(&file)?;
            let tab = decide(&spec, &cfg);
            writeln!(out, "{}", tab.verdict).map_err(io)?;
            if let Some(b) = &tab.budget {
                writeln!(err, "budget exhausted: {b}").map_err(io)?;
            }
            Ok(verdict_code(tab.verdict))
        }
        Command::Synth {
            file,
            strategy_out,
            dot,
            machine_dot,
        } => {
            let spec = load(&file)?;
            let tab = decide(&spec, &cfg);
            writeln!(out, "{}", tab.verdict).map_err(io)?;
            if let Some(path) = &dot {
                write_file(path, &to_dot(&tab))?;
            }
            if let Some(b) = &tab.budget {
                writeln!(err, "budget exhausted: {b}").map_err(io)?;
            }
            if tab.verdict != Verdict::Open {
                return Ok(verdict_code(tab.verdict));
            }
            let machine = extract(&tab)?;
            let json = serde_json::to_string_pretty(&machine_to_json(&machine)).map_err(Error::from)?;
            match &strategy_out {
                Some(path) => write_file(path, &(json + "\n"))?,
                None => writeln!(out, "{json}").map_err(io)?,
            }
            if let Some(path) = &machine_dot {
                write_file(path, &machine_to_dot(&machine))?;
            }
            Ok(EXIT_REALIZABLE)
        }
        Command::Tnf { file } => {
            let spec = load(&file)?;
            let psi = crate::formula::to_nnf(&spec.safety);
            let t = tnf(&psi, &spec.vars, cfg.simplify);
            if t.moves.is_empty() {
                writeln!(out, "false").map_err(io)?;
            }
            for m in &t.moves {
                writeln!(out, "{}", render(&m.to_formula(&spec.vars), &spec.vars)).map_err(io)?;
            }
            Ok(0)
        }
        Command::Oracle { file, strategy_out } => {
            let spec = load(&file)?;
            let res = solve(&spec, cfg.oracle_budget, cfg.oracle_lazy).map_err(Error::from)?;
            let verdict = if res.realizable { Verdict::Open } else { Verdict::Closed };
            writeln!(out, "{verdict}").map_err(io)?;
            if let (Some(path), Some(m)) = (&strategy_out, res.to_mealy(&spec)) {
                let json = serde_json::to_string_pretty(&machine_to_json(&m)).map_err(Error::from)?;
                write_file(path, &(json + "\n"))?;
            }
            Ok(verdict_code(verdict))
        }
        Command::Crosscheck { file } => {
            let spec = load(&file)?;
            crosscheck(&spec, &cfg, out).map_err(io)
        }
        Command::Verify { file, strategy } => {
            let spec = load(&file)?;
            let machine = machine_from_json(&read(&strategy)?, &spec.vars)?;
            let horizon = cfg.horizon.unwrap_or_else(|| default_horizon(&spec));
            let report = verify(&machine, &spec, horizon);
            match report.counterexample {
                None => {
                    writeln!(out, "OK ({} configurations, horizon {horizon})", report.explored).map_err(io)?;
                    Ok(0)
                }
                Some(cex) => {
                    writeln!(out, "FAIL").map_err(io)?;
                    let env = crate::formula::ValSpace::env(&spec.vars);
                    for (i, v) in cex.iter().enumerate() {
                        let lits: Vec<String> = env
                            .vars()
                            .iter()
                            .map(|&x| {
                                let lit = crate::formula::Literal::Eq(x, v.get(x));
                                let f = match spec.vars.get(x).domain {
                                    crate::formula::Domain::Bool if v.get(x) == 1 => crate::formula::Formula::pos(x),
                                    crate::formula::Domain::Bool => crate::formula::Formula::neg(x),
                                    _ => crate::formula::Formula::lit(lit),
                                };
                                render(&f, &spec.vars)
                            })
                            .collect();
                        writeln!(out, "  step {i}: {}", lits.join(", ")).map_err(io)?;
                    }
                    Ok(EXIT_UNREALIZABLE)
                }
            }
        }
        Command::Fuzz { seed, count } => {
            let corpus = spec_corpus(seed, count, &GenConfig::default());
            let mut disagreements = 0;
            let mut unknown = 0;
            for (i, spec) in corpus.iter().enumerate() {
                let tab = decide(spec, &cfg);
                let oracle = match solve(spec, cfg.oracle_budget, cfg.oracle_lazy) {
                    Ok(r) => r,
                    Err(_) => {
                        unknown += 1;
                        continue;
                    }
                };
                let expected = if oracle.realizable { Verdict::Open } else { Verdict::Closed };
                if tab.verdict == Verdict::Unknown {
                    unknown += 1;
                } else if tab.verdict != expected {
                    disagreements += 1;
                    writeln!(out, "# disagreement on spec {i}: tableau {}, game {expected}", tab.verdict).map_err(io)?;
                    write!(out, "{}", render_spec(spec)).map_err(io)?;
                }
            }
            writeln!(
                out,
                "seed {seed}: {} specs, {} agree, {disagreements} disagree, {unknown} unknown",
                corpus.len(),
                corpus.len() - disagreements - unknown
            )
            .map_err(io)?;
            Ok(if disagreements > 0 { EXIT_DISAGREE } else { 0 })
        }
    }
}

fn crosscheck(spec: &SpecFile, cfg: &EngineConfig, out: &mut dyn Write) -> std::io::Result<i32> {
    let (tab, oracle) = std::thread::scope(|s| {
        let game = s.spawn(|| solve(spec, cfg.oracle_budget, cfg.oracle_lazy));
        let tab = decide(spec, cfg);
        (tab, game.join().expect("oracle thread panicked"))
    });
    writeln!(out, "tableau: {} ({} nodes)", tab.verdict, tab.stats.nodes)?;
    let game = match oracle {
        Ok(r) => {
            let v = if r.realizable { Verdict::Open } else { Verdict::Closed };
            writeln!(out, "game:    {v} ({} states, depth {})", r.states, depth(&spec.safety))?;
            v
        }
        Err(e) => {
            writeln!(out, "game:    UNKNOWN ({e})")?;
            Verdict::Unknown
        }
    };
    Ok(match (tab.verdict, game) {
        (Verdict::Unknown, _) | (_, Verdict::Unknown) => EXIT_UNKNOWN,
        (a, b) if a == b => verdict_code(a),
        _ => {
            writeln!(out, "DISAGREEMENT")?;
            EXIT_DISAGREE
        }
    })
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Output goes to `out`, diagnostics to `err`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// [`run_with`] on the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(argv, &mut out, &mut err);
    let _ = out.flush();
    code
}
