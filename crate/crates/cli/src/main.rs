//! `qsr`: command-line front end for the quiver variety engine.

mod cache;
mod input;
mod render;
mod report;
mod sweep;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qsr_core::charvar::Group;
use qsr_core::leaves::Mode;

#[derive(Parser, Debug)]
#[command(name = "qsr", version, about = "Exact verdicts for quiver varieties and surface-group character varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Builtin quiver name (a2, affa1, affd4, jordan2, star5, ...) or a JSON file.
    #[arg(long)]
    quiver: String,
    /// Dimension vector, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Deformation covectors: comma-separated entries, covectors separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Stability covector, comma separated; entries may be `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Box bound for enumerations (defaults to alpha).
    #[arg(long)]
    bound: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridFormat {
    Csv,
    Markdown,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Permissive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Permissive => Mode::Permissive,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Gl,
    Sl,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Group {
        match g {
            GroupArg::Gl => Group::GL,
            GroupArg::Sl => Group::SL,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    /// Char(n,d) quiver varieties over n and d.
    Char,
    /// SL character varieties over n and g.
    CharSl,
    /// GL character varieties over n and g.
    CharGl,
    /// Multiples of the minimal imaginary root on affine quivers.
    Affine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots below the bound.
    Roots(Target),
    /// Restricted roots and stable dimension vectors below the bound.
    Sigma(Target),
    /// Canonical decomposition of alpha.
    Canon(Target),
    /// Full verdict for the quiver variety.
    Variety(Target),
    /// Strata by representation type, with local quivers.
    Strata(Target),
    /// Codimension-two leaves and their Weyl factors.
    Leaves {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Character variety of a closed surface group.
    Char {
        #[arg(long)]
        n: Option<i64>,
        #[arg(long)]
        g: Option<i64>,
        #[arg(long, value_enum, default_value_t = GroupArg::Gl)]
        group: GroupArg,
        /// Print a verdict grid instead of a single verdict.
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 5)]
        nmax: i64,
        #[arg(long, default_value_t = 5)]
        gmax: i64,
        /// Grid format, used with --table.
        #[arg(long, value_enum, default_value_t = GridFormat::Markdown)]
        format: GridFormat,
    },
    /// Deterministic verdict tables over a parameter grid.
    Sweep {
        #[arg(long, value_enum)]
        grid: Grid,
        #[arg(long, default_value_t = 5)]
        nmax: i64,
        /// Upper bound for d, g or the multiple m, depending on the grid.
        #[arg(long, default_value_t = 5, visible_aliases = ["dmax", "gmax", "mmax"])]
        kmax: i64,
        #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
        format: GridFormat,
    },
}

/// Failures split by exit code: malformed input exits 1, requests the
/// mathematics refuses exit 2.
pub enum Failure {
    Input(anyhow::Error),
    Domain(anyhow::Error),
}

impl From<qsr_core::Error> for Failure {
    fn from(e: qsr_core::Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        if e.downcast_ref::<qsr_core::Error>().is_some_and(qsr_core::Error::is_domain) {
            Failure::Domain(e)
        } else {
            Failure::Input(e)
        }
    }
}

pub enum Output {
    Json(Value, OutputFormat),
    Text(String),
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let out = match cli.command {
        Command::Roots(t) => Output::Json(report::roots(&t)?, t.format),
        Command::Sigma(t) => Output::Json(report::sigma(&t)?, t.format),
        Command::Canon(t) => Output::Json(report::canon(&t)?, t.format),
        Command::Variety(t) => Output::Json(report::variety(&t)?, t.format),
        Command::Strata(t) => Output::Json(report::strata(&t)?, t.format),
        Command::Leaves { target, mode } => {
            let (value, warning) = report::leaves(&target, mode.into())?;
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            Output::Json(value, target.format)
        }
        Command::Char { n, g, group, table, nmax, gmax, format } => {
            if table {
                let grid = match group {
                    GroupArg::Gl => Grid::CharGl,
                    GroupArg::Sl => Grid::CharSl,
                };
                Output::Text(sweep::sweep(grid, nmax, gmax, format)?)
            } else {
                let (Some(n), Some(g)) = (n, g) else {
                    return Err(Failure::Input(anyhow::anyhow!("char needs --n and --g, or --table")));
                };
                Output::Json(report::char_verdict(n, g, group.into())?, OutputFormat::Json)
            }
        }
        Command::Sweep { grid, nmax, kmax, format } => Output::Text(sweep::sweep(grid, nmax, kmax, format)?),
    };
    Ok(out)
}

fn error_object(kind: &str, message: String) -> String {
    serde_json::to_string_pretty(&json!({"error": {"kind": kind, "message": message}})).unwrap()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(Output::Json(value, OutputFormat::Json)) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&value).unwrap());
            ExitCode::SUCCESS
        }
        Ok(Output::Json(value, OutputFormat::Table)) => {
            let _ = write!(stdout, "{}", render::table(&value));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(text)) => {
            let _ = write!(stdout, "{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stdout, "{}", error_object("domain", format!("{e:#}")));
            ExitCode::from(2)
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(stdout, "{}", error_object("input", format!("{e:#}")));
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
