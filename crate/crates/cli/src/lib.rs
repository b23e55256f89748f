//! Command-line front end: `toric`, `hilbert`, `classify` and `oracle`
//! subcommands producing deterministic JSON or plain-text reports.

mod commands;
mod report;

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::Report;

/// Process exit status and the text written to each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "segre",
    version,
    about = "Segre products of graded algebras: depth, Cohen-Macaulayness and duality checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Resource bound: lattice points for enumerations, factors for subset scans.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Degree window `lo..hi`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Toric presentations given as matrix files.
    #[command(subcommand)]
    Toric(ToricCmd),
    /// Hilbert series `num: c e ... ; den: d`.
    #[command(subcommand)]
    Hilbert(HilbertCmd),
    /// Depth and Cohen-Macaulay criteria for shifted Segre products.
    #[command(subcommand)]
    Classify(ClassifyCmd),
    /// Brute-force graded duality checks.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand, Debug)]
enum ToricCmd {
    Validate {
        #[arg(long)]
        matrix: String,
    },
    Segre(PairArgs),
    Tensor(PairArgs),
    Kernel {
        #[arg(long)]
        matrix: String,
    },
    Census {
        #[arg(long)]
        matrix: String,
        /// Largest degree enumerated.
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    /// Also enumerate the product up to this degree.
    #[arg(long)]
    census: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum HilbertCmd {
    Coeff {
        #[arg(long, allow_hyphen_values = true)]
        series: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    Window {
        #[arg(long, allow_hyphen_values = true)]
        series: String,
    },
    Shift {
        #[arg(long, allow_hyphen_values = true)]
        series: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    Hadamard {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, default_value_t = segre_core::series::DEFAULT_GUARD)]
        guard: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ClassifyCmd {
    Depth {
        #[arg(long)]
        dims: String,
        #[arg(long, allow_hyphen_values = true)]
        ainv: String,
        #[arg(long, allow_hyphen_values = true)]
        shifts: String,
    },
    CmTwist {
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    Interval {
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
    },
    Anticanonical {
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    Friendly(FriendlyArgs),
}

#[derive(Args, Debug)]
struct FriendlyArgs {
    /// Monomial quotient such as `x:3` or `x:3,y:2`; a bare variable is free.
    #[arg(long, conflicts_with = "toric1", required_unless_present = "toric1")]
    ring1: Option<String>,
    #[arg(long, conflicts_with = "toric2", required_unless_present = "toric2")]
    ring2: Option<String>,
    /// Matrix file of a toric ring.
    #[arg(long)]
    toric1: Option<String>,
    #[arg(long)]
    toric2: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    shift1: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    shift2: i64,
    /// Truncation degree of both algebras; derived from the shifts and window when omitted.
    #[arg(long)]
    top: Option<usize>,
}

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let format = cli.format;
    match dispatch(cli) {
        Ok(report) => Outcome {
            code: 0,
            stdout: report.render(format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
    }
}

fn dispatch(cli: Cli) -> Result<Report, CliError> {
    let ctx = commands::Context::new(cli.cap, cli.window.as_deref())?;
    match cli.command {
        Command::Toric(cmd) => match cmd {
            ToricCmd::Validate { matrix } => commands::toric_validate(&ctx, &matrix),
            ToricCmd::Segre(p) => {
                commands::toric_product(&ctx, "segre", &p.left, &p.right, p.census)
            }
            ToricCmd::Tensor(p) => {
                commands::toric_product(&ctx, "tensor", &p.left, &p.right, p.census)
            }
            ToricCmd::Kernel { matrix } => commands::toric_kernel(&ctx, &matrix),
            ToricCmd::Census { matrix, n } => commands::toric_census(&ctx, &matrix, n),
        },
        Command::Hilbert(cmd) => match cmd {
            HilbertCmd::Coeff { series, n } => commands::hilbert_coeff(&series, n),
            HilbertCmd::Window { series } => commands::hilbert_window(&ctx, &series),
            HilbertCmd::Shift { series, a } => commands::hilbert_shift(&series, a),
            HilbertCmd::Hadamard { left, right, guard } => {
                commands::hilbert_hadamard(&left, &right, guard)
            }
        },
        Command::Classify(cmd) => match cmd {
            ClassifyCmd::Depth { dims, ainv, shifts } => {
                commands::classify_depth(&ctx, &dims, &ainv, &shifts)
            }
            ClassifyCmd::CmTwist { rho, a } => commands::classify_cm_twist(&ctx, &rho, a),
            ClassifyCmd::Interval { rho } => commands::classify_interval(&rho),
            ClassifyCmd::Anticanonical { rho } => commands::classify_anticanonical(&ctx, &rho),
        },
        Command::Oracle(OracleCmd::Friendly(args)) => commands::oracle_friendly(
            &ctx,
            commands::RingSource::pick(args.ring1, args.toric1),
            commands::RingSource::pick(args.ring2, args.toric2),
            args.shift1,
            args.shift2,
            args.top,
        ),
    }
}
