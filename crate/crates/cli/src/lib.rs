//! The `fsgraph` command line.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fsgraph::Limits;

mod commands;
pub mod input;

/// Exit code for malformed command lines.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for unreadable graphs, configurations or settings.
pub const EXIT_INPUT: i32 = 3;
/// Exit code for exceeded resource caps.
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Budget(String),
    /// A check ran and reported failure.
    Failed(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Budget(m) | CliError::Failed(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<fsgraph::Error> for CliError {
    fn from(e: fsgraph::Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

#[derive(Parser, Debug)]
#[command(name = "fsgraph", version, about = "Friends-and-strangers graphs FS(X, Y)")]
pub struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the explorer; defaults to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Log each step of a solver to standard error.
    #[arg(long, global = true)]
    pub trace: bool,
    /// File of `key=value` budget settings.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<String>,
    /// One budget setting, `key=value`; repeatable, applied last.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Pair {
    /// The graph X whose vertices are positions.
    #[arg(long, visible_alias = "graph-x")]
    pub x: String,
    /// The graph Y whose vertices are tokens.
    #[arg(long, visible_alias = "graph-y")]
    pub y: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Components of FS(X, Y) with their sizes, diameters and shapes.
    Explore(Pair),
    /// Largest component diameter, or the diameter of one component.
    Diameter {
        #[command(flatten)]
        pair: Pair,
        /// Restrict to the component of this configuration.
        #[arg(long)]
        from: Option<String>,
        /// Two-sweep lower bound instead of the exact value.
        #[arg(long, requires = "from")]
        two_sweep: bool,
    },
    /// Shortest cycle length of FS(X, Y).
    Girth {
        #[command(flatten)]
        pair: Pair,
        /// Also print one shortest cycle.
        #[arg(long)]
        witness: bool,
    },
    /// Acyclic orientations of a graph.
    Orient {
        #[arg(long)]
        graph: String,
        /// Report the orientation induced by this ordering instead of the class counts.
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Friendly swaps from one configuration to another on FS(Path_n, Y).
    Sort {
        #[arg(long)]
        y: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// `token` sorts on an arbitrary connected X against the complete graph.
        #[arg(long, value_enum, default_value_t = SortMethod::Path)]
        method: SortMethod,
        #[arg(long, required_if_eq("method", "token"))]
        x: Option<String>,
    },
    /// Friendly swaps between two configurations on FS(Cycle_n, Y).
    Route {
        #[arg(long)]
        y: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Also print the double-flip skeleton.
        #[arg(long)]
        skeleton: bool,
    },
    /// The layered construction X_L, Y_L and its extraction programs.
    Construct {
        #[arg(long = "L", visible_alias = "layers", value_name = "L")]
        l: usize,
        #[arg(long, value_enum, default_value_t = Emit::Graphs)]
        emit: Emit,
        /// Program level; defaults to L.
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, default_value_t = 1)]
        eta: usize,
    },
    /// Oracle girth of FS(X, Star_n) against the cycle and barbell length formulas.
    GirthProbe {
        #[arg(long)]
        graph: String,
        /// Cap on configurations the oracle may visit.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Runs the lazy chain and writes CSV.
    Chain {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start configuration; defaults to the identity.
        #[arg(long)]
        start: Option<String>,
        /// Trajectory row spacing; defaults to steps/100.
        #[arg(long)]
        every: Option<u64>,
        #[arg(long, value_enum, default_value_t = Table::Trajectory)]
        table: Table,
        #[arg(long, default_value = "chacha8")]
        rng: String,
    },
    /// Reproduces the acceptance table.
    Repro {
        #[arg(long, value_enum, default_value_t = Suite::Acceptance)]
        suite: Suite,
        /// Include the minutes-long checks.
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortMethod {
    Path,
    Token,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Graphs,
    SigmaS,
    Program,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    Trajectory,
    Tv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Acceptance,
}

pub struct Env<'a> {
    pub json: bool,
    pub trace: bool,
    pub limits: Limits,
    pub out: &'a mut (dyn Write + Send),
    pub err: &'a mut (dyn Write + Send),
}

/// Runs the command line against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut out = std::io::BufWriter::new(std::io::stdout());
    let mut err = std::io::stderr();
    let code = run_with(argv, &mut out, &mut err);
    let _ = out.flush();
    code
}

pub fn run_with<I, T>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn limits(cli: &Cli) -> Result<Limits, CliError> {
    let mut l = Limits::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        input::apply_config(&mut l, &text, path)?;
    }
    if let Ok(v) = std::env::var("FSGRAPH_BUDGET") {
        input::apply_env_budget(&mut l, &v)?;
    }
    for kv in &cli.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Usage(format!("--set expects key=value, got `{kv}`")))?;
        input::set(&mut l, k.trim(), v.trim())?;
    }
    Ok(l)
}

fn execute(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<(), CliError> {
    let limits = limits(&cli)?;
    let threads = match cli.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(k) => k,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} threads: {e}")))?;
    let mut env = Env { json: cli.json, trace: cli.trace, limits, out, err };
    let result = pool.install(|| commands::dispatch(cli.command, &mut env));
    env.out.flush()?;
    result
}
