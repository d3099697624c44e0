//! Command-line front end for `dgca-core`.
//!
//! [`run`] parses arguments, dispatches to a subcommand and writes results to
//! the given streams. It returns the process exit status: 0 on success, 1 on
//! a domain error (reported as JSON on stderr) or a failed verification, and
//! 2 on a usage error.

pub mod error;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dgca_core::cohomology::{build_graph, cocycle_space_of, extend, to_dot, Cocycle};
use dgca_core::dgca::{generators, support_pattern, truncate_decompose, CoeffMatrix, MatrixDoc};
use dgca_core::enumerate::{count_patterns_parallel, enumerate_patterns};
use dgca_core::iso::{are_isomorphic, pattern_rigidity};
use dgca_core::orbits::{aut_description, extension_class_analysis, unique_extension_class};
use dgca_core::ExactRational;

use error::CliError;
use verify::{run_suite, Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "dgca", version, about = "Exact computations with diagonally graded commutative algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every (0,1) coefficient matrix of dimension n as JSON lines.
    Enumerate {
        #[arg(short = 'n', long = "dim")]
        n: usize,
        /// Print only the number of matrices.
        #[arg(long)]
        count_only: bool,
        /// Worker threads; falls back to DGCA_JOBS, then 1.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Summary of one matrix: generators, torus, rigidity, truncation and
    /// extensions.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// The cocycle graph for extensions of a matrix.
    Graph {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Decide whether two matrices define isomorphic algebras.
    Iso {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Include the radical witness when isomorphic.
        #[arg(long)]
        witness: bool,
    },
    /// Rigidity reports for all patterns of dimension n, or for the pattern
    /// of one matrix.
    Rigidity {
        #[arg(short = 'n', long = "dim", required_unless_present = "pattern")]
        n: Option<usize>,
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Automorphism torus of a matrix.
    Aut {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Central extension by a cocycle given as comma-separated rationals.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        theta: String,
    },
    /// Orbit data for each support class of cocycles.
    ExtendClasses {
        #[arg(long = "in")]
        input: PathBuf,
        /// Largest subset of components to analyse.
        #[arg(long)]
        max_subset: Option<usize>,
    },
    /// Whether all nontrivial extensions form one class.
    UniqueClass {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest matrix dimension covered; each suite has its own default.
        #[arg(long)]
        max_dim: Option<usize>,
        /// Matrix list replacing the built-in n <= 5 tables.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn jobs_or_env(jobs: Option<usize>) -> usize {
    jobs.or_else(|| std::env::var("DGCA_JOBS").ok()?.trim().parse().ok())
        .unwrap_or(1)
        .max(1)
}

pub fn read_matrix(path: &Path) -> Result<CoeffMatrix, CliError> {
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: label.clone(),
        message: e.to_string(),
    })?;
    let doc: MatrixDoc = serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: label,
        message: e.to_string(),
    })?;
    Ok(CoeffMatrix::try_from(doc)?)
}

pub fn parse_theta(s: &str, n: usize) -> Result<Cocycle, CliError> {
    let values: Vec<ExactRational> = s
        .split(',')
        .map(|t| t.trim().parse::<ExactRational>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::BadTheta(e.to_string()))?;
    if values.len() + 1 != n {
        return Err(CliError::BadTheta(format!(
            "expected {} values for extension degree {n}, got {}",
            n - 1,
            values.len()
        )));
    }
    Ok(Cocycle::new(n, values))
}

fn to_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            1
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    writeln!(out, "{text}").map_err(|e| CliError::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    })
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Enumerate { n, count_only, jobs } => {
            let jobs = jobs_or_env(jobs);
            if count_only {
                write_out(out, &count_patterns_parallel(n, jobs)?.to_string())?;
            } else {
                for p in enumerate_patterns(n, jobs)? {
                    let c = dgca_core::dgca::canonical_rep(&p)?;
                    write_out(out, &to_line(&c))?;
                }
            }
        }
        Command::Analyze { input } => {
            let c = read_matrix(&input)?;
            write_out(out, &to_pretty(&analyze(&c)?))?;
        }
        Command::Graph { input, format } => {
            let c = read_matrix(&input)?;
            let g = build_graph(&c, c.dim() + 1)?;
            match format {
                GraphFormat::Dot => write!(out, "{}", to_dot(&g)).map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })?,
                GraphFormat::Json => write_out(out, &to_pretty(&g))?,
            }
        }
        Command::Iso { a, b, witness } => {
            let (ca, cb) = (read_matrix(&a)?, read_matrix(&b)?);
            let mut d = are_isomorphic(&ca, &cb)?;
            let mut doc = json!({ "isomorphic": d.isomorphic, "obstructions": d.obstructions });
            if witness {
                if let Some(w) = d.witness.take() {
                    let values = w.rational_values()?;
                    doc["witness"] = json!({
                        "rhs": w.rhs,
                        "exponents": w.exponents,
                        "rational_values": values,
                    });
                }
            }
            write_out(out, &to_pretty(&doc))?;
        }
        Command::Rigidity { n, pattern, jobs } => {
            let patterns = match (n, pattern) {
                (_, Some(path)) => vec![support_pattern(&read_matrix(&path)?)],
                (n, None) => enumerate_patterns(n.expect("clap requires -n or --pattern"), jobs_or_env(jobs))?,
            };
            for p in patterns {
                write_out(out, &to_line(&pattern_rigidity(&p)?))?;
            }
        }
        Command::Aut { input } => {
            let c = read_matrix(&input)?;
            write_out(out, &to_pretty(&aut_description(&c)))?;
        }
        Command::Extend { input, theta } => {
            let c = read_matrix(&input)?;
            let theta = parse_theta(&theta, c.dim() + 1)?;
            write_out(out, &to_line(&extend(&c, &theta)?))?;
        }
        Command::ExtendClasses { input, max_subset } => {
            let c = read_matrix(&input)?;
            write_out(out, &to_pretty(&extension_class_analysis(&c, c.dim() + 1, max_subset)?))?;
        }
        Command::UniqueClass { input } => {
            let c = read_matrix(&input)?;
            write_out(out, &unique_extension_class(&c, c.dim() + 1)?.to_string())?;
        }
        Command::Verify {
            suite,
            max_dim,
            fixture,
            jobs,
        } => {
            let opts = VerifyOptions {
                max_dim,
                fixture: fixture.as_deref(),
                jobs: jobs_or_env(jobs),
            };
            let report = run_suite(suite, &opts)?;
            write_out(out, &to_pretty(&report))?;
            if !report.passed && !suite.is_experiment() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}

fn analyze(c: &CoeffMatrix) -> Result<serde_json::Value, CliError> {
    let n = c.dim() + 1;
    let graph = build_graph(c, n)?;
    let space = cocycle_space_of(&graph);
    let aut = aut_description(c);
    let rigidity = pattern_rigidity(&support_pattern(c))?;
    let truncation = (c.dim() >= 2).then(|| {
        let (bar, theta) = truncate_decompose(c);
        json!({ "matrix": bar, "theta": theta.theta })
    });
    Ok(json!({
        "matrix": c,
        "dim": c.dim(),
        "support_size": c.support_size(),
        "generators": generators(c),
        "aut": { "dim_aut": aut.dim_aut, "n_of_c": aut.n_of_c, "t_of_c": aut.t_of_c },
        "rigid": rigidity.rigid,
        "obstruction_monomials": serde_json::to_value(&rigidity).expect("report serializes")["obstruction_monomials"],
        "truncation": truncation,
        "extensions": {
            "n": n,
            "cocycle_dim": space.dim,
            "u_of_c": space.u_of_c,
            "unique_class": graph.nonvanishing().count() == 1,
        },
    }))
}
