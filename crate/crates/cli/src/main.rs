//! `strictcol` command-line front end.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict, 2 undecided,
//! 64 malformed input or usage error.

mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use strictcol::lambda::lambda_choosable_with;
use strictcol::list_color::k_choosable_with;
use strictcol::strict::decide_strict_search_with;
use strictcol::{
    complete_multipartite, decide_strict_cmp, enumerate_partitions, l_color, l_color_multipartite,
    leq, refinement_hasse, validate_lambda, BadAssignmentWitness, Graph, IntegerPartition,
    LambdaAssignment, ListAssignment, PartSizes, SearchOptions,
};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_UNDECIDED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Lib(#[from] strictcol::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(strictcol::Error::Undecided(_))
            | CliError::Lib(strictcol::Error::BoundExceeded { .. }) => EXIT_UNDECIDED,
            _ => EXIT_USAGE,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "strictcol",
    version,
    about = "Exact list coloring with grouped color sets"
)]
struct Cli {
    /// Suppress diagnostics on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads for exhaustive searches; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Seed for random trials.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer partitions and their order.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Verdicts on colorability, validity and choosability.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Strict k-colorability of complete multipartite graphs.
    #[command(subcommand)]
    Strict(StrictCmd),
    /// Re-derive every checkable claim and write its certificate.
    VerifyClaims(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum PartitionsCmd {
    /// All partitions of k, one per line.
    List { k: usize },
    /// Is LO below HI in the order? Prints LE with the intermediate partition, or NLE.
    Order { lo: String, hi: String },
    /// Covering relation of refinement on the partitions of k, as DOT.
    Hasse { k: usize },
}

#[derive(Args, Debug)]
struct GraphInput {
    /// Graph JSON file.
    #[arg(long, conflicts_with = "parts")]
    graph: Option<PathBuf>,
    /// Part sizes of a complete multipartite graph, e.g. 2,4,6.
    #[arg(long)]
    parts: Option<String>,
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    /// Is the graph colorable from the given lists?
    ListColor {
        #[command(flatten)]
        input: GraphInput,
        /// Lists JSON, a lambda-assignment, or a bad-assignment witness.
        #[arg(long)]
        lists: PathBuf,
    },
    /// Is the file a valid lambda-assignment?
    LambdaValidate {
        /// Lambda-assignment JSON or a bad-assignment witness.
        #[arg(long)]
        witness: PathBuf,
    },
    /// Is the graph lambda-choosable?
    LambdaChoosable {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        lambda: String,
    },
    /// Is the graph k-choosable?
    KChoosable {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Theorem,
    Search,
}

#[derive(Subcommand, Debug)]
enum StrictCmd {
    /// Decide whether K_{a1,...,ak} is strictly k-colorable.
    Check {
        #[arg(long)]
        parts: String,
        #[arg(long, value_enum, default_value_t = Method::Theorem)]
        method: Method,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest k for the witness families.
    #[arg(long, default_value_t = verify::DEFAULT_K_MAX)]
    pub k_max: usize,
    /// Directory for certificates and report.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Re-validate certificates from this directory instead of regenerating them.
    #[arg(long)]
    pub recheck: Option<PathBuf>,
}

pub struct Ctx {
    pub quiet: bool,
    pub seed: u64,
    pub opts: SearchOptions,
}

impl Ctx {
    pub fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

pub fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string(value).expect("values serialize")
    );
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value, path: &Path) -> CliResult<T> {
    serde_json::from_value(v).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// The lambda-assignment inside a bare assignment, a bad-assignment
/// witness, or a strict decision with a bad-assignment certificate.
fn find_assignment(v: &Value) -> Option<&Value> {
    if v.get("groups").is_some() && v.get("lambda").is_some() {
        return Some(v);
    }
    v.get("assignment")
        .or_else(|| v.get("certificate").and_then(|c| c.get("assignment")))
}

pub fn load_assignment(path: &Path) -> CliResult<LambdaAssignment> {
    let v = read_json(path)?;
    let inner = find_assignment(&v).cloned().ok_or_else(|| {
        CliError::Usage(format!("{}: no lambda-assignment found", path.display()))
    })?;
    from_value(inner, path)
}

fn load_lists(path: &Path) -> CliResult<ListAssignment> {
    let v = read_json(path)?;
    let lists = match find_assignment(&v) {
        Some(a) => a.get("lists").cloned(),
        None => v.get("lists").cloned(),
    }
    .ok_or_else(|| CliError::Usage(format!("{}: no lists found", path.display())))?;
    from_value(serde_json::json!({ "lists": lists }), path)
}

fn parse_sizes(text: &str) -> CliResult<PartSizes> {
    Ok(text.parse::<PartSizes>()?)
}

fn parse_lambda(text: &str) -> CliResult<IntegerPartition> {
    Ok(text.parse::<IntegerPartition>()?)
}

/// The graph plus its part sizes when given as `--parts`.
fn load_graph(input: &GraphInput) -> CliResult<(Graph, Option<PartSizes>)> {
    match (&input.graph, &input.parts) {
        (Some(path), None) => Ok((from_value(read_json(path)?, path)?, None)),
        (None, Some(text)) => {
            let sizes = parse_sizes(text)?;
            Ok((complete_multipartite(&sizes)?, Some(sizes)))
        }
        _ => Err(CliError::Usage(
            "give exactly one of --graph or --parts".into(),
        )),
    }
}

fn run_partitions(cmd: PartitionsCmd) -> CliResult<u8> {
    match cmd {
        PartitionsCmd::List { k } => {
            for p in enumerate_partitions(k)? {
                println!("{}", p.to_text());
            }
            Ok(EXIT_YES)
        }
        PartitionsCmd::Order { lo, hi } => {
            let (lo, hi) = (parse_lambda(&lo)?, parse_lambda(&hi)?);
            match leq(&lo, &hi) {
                Some(w) => {
                    let mid = w
                        .intermediate
                        .expect("order witnesses record the intermediate");
                    println!("LE via {mid}");
                    Ok(EXIT_YES)
                }
                None => {
                    println!("NLE");
                    Ok(EXIT_NO)
                }
            }
        }
        PartitionsCmd::Hasse { k } => {
            print!("{}", refinement_hasse(k)?.to_dot());
            Ok(EXIT_YES)
        }
    }
}

fn run_check(cmd: CheckCmd, ctx: &Ctx) -> CliResult<u8> {
    match cmd {
        CheckCmd::ListColor { input, lists } => {
            let (g, sizes) = load_graph(&input)?;
            let lists = load_lists(&lists)?;
            let found = match sizes {
                Some(s) => l_color_multipartite(&s, &lists)?,
                None => l_color(&g, &lists)?,
            };
            ctx.note(format!("{} search nodes", found.nodes_searched));
            print_json(&found);
            Ok(if found.colorable { EXIT_YES } else { EXIT_NO })
        }
        CheckCmd::LambdaValidate { witness } => {
            let a = load_assignment(&witness)?;
            let report = validate_lambda(&a);
            for v in &report.violations {
                ctx.note(format!("violation: {v:?}"));
            }
            print_json(&report);
            Ok(if report.valid { EXIT_YES } else { EXIT_NO })
        }
        CheckCmd::LambdaChoosable { input, lambda } => {
            let (g, _) = load_graph(&input)?;
            let lambda = parse_lambda(&lambda)?;
            let verdict = lambda_choosable_with(&g, &lambda, &ctx.opts)?;
            if let Some(w) = &verdict.witness {
                if !w.verify(&g)? {
                    return Err(CliError::Usage(
                        "internal: witness failed re-validation".into(),
                    ));
                }
            }
            if let Some(p) = &verdict.provenance {
                ctx.note(format!("decided by {p:?}"));
            }
            print_json(&verdict);
            Ok(match verdict.choosable {
                Some(true) => EXIT_YES,
                Some(false) => EXIT_NO,
                None => EXIT_UNDECIDED,
            })
        }
        CheckCmd::KChoosable { input, k } => {
            let (g, _) = load_graph(&input)?;
            let verdict = k_choosable_with(&g, k, &ctx.opts)?;
            print_json(&verdict);
            Ok(if verdict.is_choosable() {
                EXIT_YES
            } else {
                EXIT_NO
            })
        }
    }
}

fn run_strict(cmd: StrictCmd, ctx: &Ctx) -> CliResult<u8> {
    let StrictCmd::Check { parts, method } = cmd;
    let sizes = parse_sizes(&parts)?;
    let decision = match method {
        Method::Theorem => {
            if sizes.k() < 3 {
                return Err(CliError::Usage(format!(
                    "the theorem method covers k >= 3 parts only ({} has {}); use --method search",
                    sizes,
                    sizes.k()
                )));
            }
            decide_strict_cmp(&sizes)?
        }
        Method::Search => {
            let g = complete_multipartite(&sizes)?;
            let mut d = decide_strict_search_with(&g, sizes.k(), &ctx.opts)?;
            d.sizes = Some(sizes.clone());
            d
        }
    };
    if !decision.verify()? {
        return Err(CliError::Usage(
            "internal: certificate failed re-validation".into(),
        ));
    }
    ctx.note(format!("{sizes}: {}", decision.reason.as_str()));
    print_json(&decision);
    Ok(if decision.strict { EXIT_YES } else { EXIT_NO })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        quiet: cli.quiet,
        seed: cli.seed,
        opts: SearchOptions {
            workers: cli.workers.max(1),
            ..SearchOptions::default()
        },
    };
    let result = match cli.command {
        Command::Partitions(cmd) => run_partitions(cmd),
        Command::Check(cmd) => run_check(cmd, &ctx),
        Command::Strict(cmd) => run_strict(cmd, &ctx),
        Command::VerifyClaims(args) => verify::run(&args, &ctx),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Reads a bad-assignment witness written by `verify-claims`.
pub fn load_witness(path: &Path) -> CliResult<BadAssignmentWitness> {
    from_value(read_json(path)?, path)
}
