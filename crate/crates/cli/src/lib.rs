//! Command-line front end. Every command prints one JSON report.

mod commands;
pub mod config;
mod context;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use brauer_core::fppoly::DEFAULT_FACTOR_SEED;
use brauer_core::Error;

pub use context::DEFAULT_BOUND;

/// Report schema identifier; bump on incompatible changes.
pub const REPORT_SCHEMA: &str = "brauer-report/1";

#[derive(Debug, Parser)]
#[command(
    name = "brauer",
    version,
    about = "Brauer classes, quaternion algebras and surface censuses over number fields"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalArgs {
    /// Prime bound (default: config, then BRAUER_PRIME_BOUND, then 10000).
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Configuration file (`key = value` lines).
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Splitting cache file.
    #[arg(long, global = true)]
    pub cache: Option<std::path::PathBuf>,
    /// Run without the persistent splitting cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Trusted fact about every field given on the command line.
    #[arg(long = "claim", value_enum, global = true)]
    pub claims: Vec<Claim>,
    /// Accept polynomials whose irreducibility cannot be certified.
    #[arg(long, global = true)]
    pub trust_irreducible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    NarrowClassNumberOne,
    Primitive,
    OnlyTotallyRealSubfieldQ,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Number fields and prime splitting.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Brauer classes by local invariants.
    #[command(subcommand)]
    Brauer(BrauerCmd),
    /// Quaternion algebras.
    #[command(subcommand)]
    Quat(QuatCmd),
    /// Bounded-prime evidence about pairs of fields.
    #[command(subcommand)]
    Equiv(EquivCmd),
    /// Totally geodesic surface classes.
    #[command(subcommand)]
    Surfaces(SurfacesCmd),
    /// The persistent splitting cache.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldCmd {
    /// Degree, signature, discriminant, reduction and irreducibility evidence.
    Info(PolyArg),
    /// Splitting of one prime, or of every prime up to the bound.
    Split(PrimeArgs),
    /// Gcd of inertia degrees at one prime, or a histogram up to the bound.
    Gcd(PrimeArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct PolyArg {
    /// Polynomial (`x^8+6561`, `[1,0,1]`) or `@name` from the config.
    #[arg(long)]
    pub poly: String,
}

#[derive(Debug, Args, Serialize)]
pub struct PrimeArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub prime: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassArgs {
    /// Field of the class (default: Q).
    #[arg(long, default_value = "x")]
    pub poly: String,
    /// Local invariant `PLACE=VALUE`, e.g. `P7.0=1/3`, `inf=1/2`.
    #[arg(long = "inv")]
    pub inv: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct MoveArgs {
    #[command(flatten)]
    pub class: ClassArgs,
    /// Target field.
    #[arg(long)]
    pub to: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BrauerCmd {
    /// Validate a class.
    Make(ClassArgs),
    /// Index (= exponent) of a class.
    Index(ClassArgs),
    /// Restriction to an extension field.
    Restrict(MoveArgs),
    /// Transport to a splitting-equivalent field.
    Transport(MoveArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct AlgebraArgs {
    #[arg(long)]
    pub poly: String,
    /// Ramified places, comma separated (`P3.0,P3.1`, `2,inf` over Q).
    #[arg(long, default_value = "")]
    pub ram: String,
}

#[derive(Debug, Args, Serialize)]
pub struct PairArgs {
    #[arg(long)]
    pub poly1: String,
    #[arg(long, default_value = "")]
    pub ram1: String,
    #[arg(long)]
    pub poly2: String,
    #[arg(long, default_value = "")]
    pub ram2: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuatCmd {
    /// Base change of an algebra over Q.
    Basechange {
        /// Ramification of B over Q, e.g. `3,7` or `2,inf`.
        #[arg(long, default_value = "")]
        ram: String,
        #[arg(long)]
        to: String,
    },
    /// Do A1 and A2 come from the same algebras over Q?
    Match(PairArgs),
    /// Algebras over Q whose base change is A.
    Enumerate {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Exclude infinity from the ramification of B.
        #[arg(long)]
        indefinite: bool,
    },
    /// Search for B with B (x) K1 = B0 (x) K1 but B (x) K2 != B0 (x) K2.
    Distinguish {
        #[arg(long, default_value = "")]
        b0: String,
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivCmd {
    /// Splitting types and inertia gcds agree at every good prime.
    GcdCheck(FieldPair),
    /// Every prime splitting completely in f1 splits completely in f2.
    Splitcheck(FieldPair),
    /// Roots of unity and catalog subfields, as evidence.
    Fingerprint {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 50)]
        d_max: i64,
        #[arg(long, default_value_t = 32)]
        m_max: u64,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct FieldPair {
    #[arg(long)]
    pub f1: String,
    #[arg(long)]
    pub f2: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfacesCmd {
    /// Surface classes of one commensurability class.
    List {
        #[arg(long, required_unless_present = "preset")]
        poly: Option<String>,
        #[arg(long, default_value = "")]
        ram: String,
        #[arg(long, conflicts_with = "poly")]
        preset: Option<Preset>,
    },
    /// Compare the surface classes of two commensurability classes.
    Compare {
        #[arg(long, required_unless_present = "preset")]
        poly1: Option<String>,
        #[arg(long, default_value = "")]
        ram1: String,
        #[arg(long, required_unless_present = "preset")]
        poly2: Option<String>,
        #[arg(long, default_value = "")]
        ram2: String,
        #[arg(long, conflicts_with_all = ["poly1", "poly2"])]
        preset: Option<Preset>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    PaperK1k2,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheCmd {
    Stats,
    Clear,
}

/// Outcome of one command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Definite,
    Unknown,
}

#[derive(Debug, Serialize)]
struct Report {
    schema: &'static str,
    tool_version: &'static str,
    command: Vec<String>,
    inputs: Value,
    bound: Option<u64>,
    seed: u64,
    status: &'static str,
    result: Value,
    error: Option<String>,
    trusted_flags: Vec<&'static str>,
    trusted_flags_used: Vec<&'static str>,
}

/// Exit code plus what to print.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_status(e: &Error) -> (i32, &'static str) {
    match e {
        Error::InconclusiveIrreducibility(_) | Error::IndexPrime { .. } => (2, "unknown"),
        _ => (1, "error"),
    }
}

/// Runs `brauer <args>`; `args` excludes the program name.
pub fn run_command<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(
        std::iter::once("brauer".to_string()).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => {
                    let report = Report {
                        schema: REPORT_SCHEMA,
                        tool_version: brauer_core::VERSION,
                        command: args,
                        inputs: Value::Null,
                        bound: None,
                        seed: DEFAULT_FACTOR_SEED,
                        status: "error",
                        result: Value::Null,
                        error: Some(e.kind().to_string()),
                        trusted_flags: vec![],
                        trusted_flags_used: vec![],
                    };
                    Outcome {
                        code: 1,
                        stdout: render(&report),
                        stderr: text,
                    }
                }
            };
        }
    };

    let mut ctx = match context::Context::new(&cli.global) {
        Ok(ctx) => ctx,
        Err(msg) => return failure(&cli, args, None, 1, "error", msg),
    };
    let result = commands::dispatch(&mut ctx, &cli.command);
    let warning = ctx.finish();
    let mut outcome = match result {
        Ok((value, status)) => {
            let report = Report {
                schema: REPORT_SCHEMA,
                tool_version: brauer_core::VERSION,
                inputs: inputs(&cli),
                command: args,
                bound: ctx.bound_used(),
                seed: DEFAULT_FACTOR_SEED,
                status: if status == Status::Definite {
                    "ok"
                } else {
                    "unknown"
                },
                result: value,
                error: None,
                trusted_flags: ctx.flags_given(),
                trusted_flags_used: ctx.flags_used(),
            };
            let code = if status == Status::Definite { 0 } else { 2 };
            Outcome {
                code,
                stdout: render(&report),
                stderr: String::new(),
            }
        }
        Err(commands::Failure::Core(e)) => {
            let (code, status) = error_status(&e);
            failure(&cli, args, Some(&ctx), code, status, e.to_string())
        }
        Err(commands::Failure::Usage(msg)) => failure(&cli, args, Some(&ctx), 1, "error", msg),
    };
    if let Some(w) = warning {
        outcome.stderr.push_str(&w);
    }
    outcome
}

fn inputs(cli: &Cli) -> Value {
    serde_json::json!({ "global": &cli.global, "command": &cli.command })
}

fn failure(
    cli: &Cli,
    args: Vec<String>,
    ctx: Option<&context::Context>,
    code: i32,
    status: &'static str,
    msg: String,
) -> Outcome {
    let report = Report {
        schema: REPORT_SCHEMA,
        tool_version: brauer_core::VERSION,
        inputs: inputs(cli),
        command: args,
        bound: ctx.and_then(|c| c.bound_used()),
        seed: DEFAULT_FACTOR_SEED,
        status,
        result: Value::Null,
        error: Some(msg.clone()),
        trusted_flags: ctx.map(|c| c.flags_given()).unwrap_or_default(),
        trusted_flags_used: ctx.map(|c| c.flags_used()).unwrap_or_default(),
    };
    Outcome {
        code,
        stdout: render(&report),
        stderr: format!("error: {msg}\n"),
    }
}

fn render(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    text
}
