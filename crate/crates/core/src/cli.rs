//! Command-line front end.
//!
//! Exit codes: 0 success or agreement, 1 disagreement or countermodel,
//! 2 usage, input or parse error, 3 resource guard.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::completion::{completion, desugar, CompletionError};
use crate::equiv::{
    builtin_fixture, check_equivalence, check_proposition3, EquivError, FixtureError, Mode,
};
use crate::semantics::{
    ground_program, is_sm_model, is_supported, is_tight_on, satisfies, Interpretation, Limits,
    SemanticsError,
};
use crate::syntax::{parse_program, parse_sentences, ParseError, Program, Sentence};
use crate::tightness::{
    chains, chains_to_dot, check_gamma_tight, export_tptp, joint_signature,
    predicate_dependency_graph, Chain, TightnessError, TightnessStatus,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Analysis of Lloyd-Topor programs: completion, tightness, chains and
/// stable-model checks.
///
/// INPUT is a program file or `fixture:NAME` for a built-in example.
#[derive(Debug, Parser)]
#[command(name = "lt-tight", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the parsed program.
    Parse { input: String },
    /// Print the completed definitions and constraint sentences.
    Complete {
        input: String,
        /// Apply the equality-driven simplifications.
        #[arg(long)]
        simplify: bool,
    },
    /// Decide tightness from the predicate dependency graph.
    Tight { input: String },
    /// Print the predicate dependency graph.
    Graph {
        input: String,
        /// DOT output.
        #[arg(long)]
        dot: bool,
        /// Render the rule dependency graph traversed by chains of this
        /// length instead (DOT).
        #[arg(long, value_name = "N")]
        chains: Option<usize>,
    },
    /// List the chains of length N.
    Chains {
        input: String,
        #[arg(long)]
        n: usize,
    },
    /// Print the chain formula of every chain of length N.
    ChainFormulas {
        input: String,
        #[arg(long)]
        n: usize,
    },
    /// Check tightness relative to GAMMA with chains of length N.
    CheckGammaTight {
        input: String,
        #[arg(long)]
        n: usize,
        /// Sentence file, `fixture:NAME` or `none`; defaults to the
        /// fixture's assumptions for built-in inputs.
        #[arg(long)]
        gamma: Option<String>,
        /// Largest universe searched for countermodels.
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Print the ground rules of the desugared program.
    Ground {
        input: String,
        /// Interpretation file, or a literal starting with `universe=`.
        #[arg(long)]
        interp: String,
    },
    /// Decide whether an interpretation is a stable model.
    Stable {
        input: String,
        /// Interpretation file, or a literal starting with `universe=`.
        #[arg(long)]
        interp: String,
    },
    /// Compare stable models with models of the completion.
    CheckEquiv {
        input: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        m_max: usize,
        /// Sample this many interpretations instead of enumerating.
        #[arg(long, value_name = "COUNT")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare the moving-objects program with its explicit description.
    CheckProp3 {
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "COUNT", default_value_t = 1000)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write one TPTP problem per chain of length N.
    ExportTptp {
        input: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gamma: Option<String>,
        /// Write `chain_<i>.p` files here instead of standard output.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print a built-in program or, with --gamma, its assumptions.
    Fixture {
        name: String,
        #[arg(long)]
        gamma: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Tightness(#[from] TightnessError),
    #[error(transparent)]
    Equiv(#[from] EquivError),
    #[error("write failed: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let guard = |e: &SemanticsError| matches!(e, SemanticsError::ResourceGuard { .. });
        match self {
            CliError::Semantics(e)
            | CliError::Tightness(TightnessError::Semantics(e))
            | CliError::Equiv(EquivError::Semantics(e))
                if guard(e) =>
            {
                EXIT_GUARD
            }
            _ => EXIT_USAGE,
        }
    }
}

struct Input {
    id: String,
    program: Program,
    gamma: Vec<Sentence>,
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

fn load_input(spec: &str) -> Result<Input, CliError> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        let f = builtin_fixture(name)?;
        return Ok(Input {
            id: f.name,
            program: f.program,
            gamma: f.gamma,
        });
    }
    let text = read(spec)?;
    let program = parse_program(&text).map_err(|source| CliError::Parse {
        path: spec.to_string(),
        source,
    })?;
    Ok(Input {
        id: spec.to_string(),
        program,
        gamma: Vec::new(),
    })
}

fn load_gamma(spec: Option<&str>, input: &Input) -> Result<Vec<Sentence>, CliError> {
    match spec {
        None => Ok(input.gamma.clone()),
        Some("none") => Ok(Vec::new()),
        Some(s) => {
            if let Some(name) = s.strip_prefix("fixture:") {
                return Ok(builtin_fixture(name)?.gamma);
            }
            parse_sentences(&read(s)?).map_err(|source| CliError::Parse {
                path: s.to_string(),
                source,
            })
        }
    }
}

fn load_interp(spec: &str, input: &Input) -> Result<Interpretation, CliError> {
    let text = if spec.trim_start().starts_with("universe=") {
        spec.to_string()
    } else {
        read(spec)?
    };
    Ok(Interpretation::parse(text.trim(), &input.program.signature)?)
}

fn chain_list(prog: &Program, n: usize) -> Vec<Chain> {
    chains(prog, n).collect()
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let limits = Limits::from_env();
    match cli.command {
        Command::Parse { input } => {
            write!(out, "{}", load_input(&input)?.program)?;
        }
        Command::Complete { input, simplify } => {
            let input = load_input(&input)?;
            let mut comp = completion(&input.program)?;
            if simplify {
                comp = comp.simplified();
            }
            for s in comp.sentences() {
                writeln!(out, "{s}.")?;
            }
        }
        Command::Tight { input } => {
            let input = load_input(&input)?;
            match predicate_dependency_graph(&input.program).find_cycle() {
                None => writeln!(out, "tight")?,
                Some(cycle) => {
                    writeln!(out, "not tight")?;
                    writeln!(out, "cycle {} -> {}", cycle.join(" -> "), cycle[0])?;
                }
            }
        }
        Command::Graph { input, dot, chains } => {
            let input = load_input(&input)?;
            if let Some(n) = chains {
                write!(out, "{}", chains_to_dot(&chain_list(&input.program, n)))?;
            } else {
                let g = predicate_dependency_graph(&input.program);
                if dot {
                    write!(out, "{}", g.to_dot())?;
                } else {
                    for (from, to) in g.edges.keys() {
                        writeln!(out, "{from} -> {to}")?;
                    }
                }
            }
        }
        Command::Chains { input, n } => {
            let input = load_input(&input)?;
            let all = chain_list(&input.program, n);
            for (i, c) in all.iter().enumerate() {
                writeln!(out, "chain {i}")?;
                write!(out, "{c}")?;
            }
            writeln!(out, "count={}", all.len())?;
        }
        Command::ChainFormulas { input, n } => {
            let input = load_input(&input)?;
            for c in chains(&input.program, n) {
                writeln!(out, "{}", c.formula())?;
            }
        }
        Command::CheckGammaTight {
            input,
            n,
            gamma,
            bound,
        } => {
            let input = load_input(&input)?;
            let gamma = load_gamma(gamma.as_deref(), &input)?;
            let verdict = check_gamma_tight(&input.program, &gamma, n, bound, &limits)?;
            writeln!(out, "{verdict}")?;
            if matches!(verdict.status, TightnessStatus::Countermodel { .. }) {
                return Ok(EXIT_DISAGREE);
            }
        }
        Command::Ground { input, interp } => {
            let input = load_input(&input)?;
            let i = load_interp(&interp, &input)?;
            let grounded = ground_program(&desugar(&input.program), &i)?;
            for rule in &grounded.program.rules {
                writeln!(out, "{rule}")?;
            }
        }
        Command::Stable { input, interp } => {
            let input = load_input(&input)?;
            let i = load_interp(&interp, &input)?;
            let stable = is_sm_model(&input.program, &i, &limits)?;
            let grounded = ground_program(&desugar(&input.program), &i)?;
            let j = i.atoms();
            writeln!(out, "{}", if stable { "stable" } else { "not stable" })?;
            writeln!(out, "model={}", satisfies(&j, &grounded.formula))?;
            writeln!(out, "supported={}", is_supported(&grounded.program, &j))?;
            writeln!(out, "tight_on={}", is_tight_on(&grounded.program, &j))?;
        }
        Command::CheckEquiv {
            input,
            gamma,
            m_max,
            sample,
            seed,
            jobs,
        } => {
            let input = load_input(&input)?;
            let gamma = load_gamma(gamma.as_deref(), &input)?;
            let mode = match sample {
                Some(count) => Mode::Sampled { count, seed },
                None => Mode::Exhaustive,
            };
            let report = check_equivalence(
                &input.program,
                &input.id,
                &gamma,
                m_max,
                &mode,
                jobs.max(1),
                &limits,
            )?;
            write!(out, "{report}")?;
            if !report.agrees() {
                return Ok(EXIT_DISAGREE);
            }
        }
        Command::CheckProp3 {
            k,
            sample,
            seed,
            jobs,
        } => {
            let report = check_proposition3(k, sample, seed, jobs.max(1), &limits)?;
            write!(out, "{report}")?;
            if !report.agrees() {
                return Ok(EXIT_DISAGREE);
            }
        }
        Command::ExportTptp {
            input,
            n,
            gamma,
            out_dir,
        } => {
            let input = load_input(&input)?;
            let gamma = load_gamma(gamma.as_deref(), &input)?;
            joint_signature(&input.program, &gamma).map_err(TightnessError::from)?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.display().to_string(),
                    source,
                })?;
            }
            for (i, c) in chains(&input.program, n).enumerate() {
                let problem = export_tptp(&input.program, &gamma, &c.formula())?;
                match &out_dir {
                    Some(dir) => {
                        let path = dir.join(format!("chain_{i}.p"));
                        fs::write(&path, &problem).map_err(|source| CliError::Io {
                            path: path.display().to_string(),
                            source,
                        })?;
                        writeln!(out, "{}", path.display())?;
                    }
                    None => {
                        writeln!(out, "% chain {i}")?;
                        write!(out, "{problem}")?;
                    }
                }
            }
        }
        Command::Fixture { name, gamma } => {
            let f = builtin_fixture(&name)?;
            if gamma {
                write!(out, "{}", f.gamma_source)?;
            } else {
                write!(out, "{}", f.source)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
