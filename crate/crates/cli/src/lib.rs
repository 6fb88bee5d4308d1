//! Command-line front end for `mqindex-core`: input formats, presentation and
//! witness files, the invariant report, and the bundled knot fixtures.

pub mod commands;
pub mod config;
pub mod error;
pub mod files;
pub mod fixtures;
pub mod input;
pub mod random;
pub mod report;
pub mod selftest;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};

use crate::config::{OutputMode, RunConfiguration, DEFAULT_SEED};
use crate::error::CliError;
use crate::input::Format;

#[derive(Debug, Parser)]
#[command(
    name = "mqindex",
    version,
    about = "Ma-Qiu and Nakanishi index bounds for knots and group presentations"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Structured JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, value_name = "N", default_value_t = 500)]
    pub budget_tietze: usize,
    #[arg(long, global = true, value_name = "N", default_value_t = 400)]
    pub budget_kb: usize,
    #[arg(long, global = true, value_name = "N", default_value_t = 2)]
    pub search_depth: usize,
    #[arg(long, global = true, value_name = "N", default_value_t = 20_000)]
    pub search_width: usize,
    #[arg(long, global = true, value_name = "B", default_value_t = 8)]
    pub rational_bound: i64,
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfiguration {
        RunConfiguration {
            tietze_budget: self.budget_tietze,
            kb_budget: self.budget_kb,
            search_depth: self.search_depth,
            search_width: self.search_width,
            rational_bound: self.rational_bound,
            output: if self.json {
                OutputMode::Json
            } else {
                OutputMode::Human
            },
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Input file, or `-` for stdin.
    #[arg(long, value_name = "FILE|-", conflicts_with = "text")]
    pub input: Option<String>,
    /// Input given inline.
    #[arg(long)]
    pub text: Option<String>,
    /// Input format; detected from the text when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl InputArgs {
    pub fn read(&self) -> Result<String, CliError> {
        match (&self.input, &self.text) {
            (Some(path), _) => input::read_source(path),
            (None, Some(t)) => Ok(t.clone()),
            (None, None) => Err(CliError::input("pass --input <file|-> or --text <code>")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Alexander data, Nakanishi lower bound, Ma-Qiu interval and unknotting bounds.
    Invariants(InputArgs),
    /// Operations on presentation files.
    #[command(subcommand)]
    Group(GroupCommand),
    /// The move catalog, and single moves on diagrams.
    #[command(subcommand)]
    Moves(MovesCommand),
    /// Search for a sequence of virtualizations and crossing changes to the unknot.
    Search(SearchArgs),
    /// Run the bundled fixture checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PresentationArg {
    /// Presentation file, or `-` for stdin.
    #[arg(long, value_name = "FILE|-")]
    pub input: String,
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Abelian invariants of the group.
    Abelianize(PresentationArg),
    /// Whether a word lies in the commutator subgroup.
    Nullhom {
        #[command(flatten)]
        presentation: PresentationArg,
        #[arg(long)]
        word: String,
    },
    /// Replace one relator and report null-homology in both directions.
    Replace {
        #[command(flatten)]
        presentation: PresentationArg,
        /// 1-based relator index.
        #[arg(long)]
        index: usize,
        #[arg(long)]
        word: String,
        /// Write the new presentation here.
        #[arg(long)]
        output: Option<String>,
    },
    /// Transfer a normal-generator witness to a second presentation.
    Transfer {
        #[command(flatten)]
        presentation: PresentationArg,
        #[arg(long)]
        target: String,
        #[arg(long)]
        witness: String,
        #[arg(long)]
        output: Option<String>,
    },
    /// Rank-bound witness for the commutator subgroup.
    RankBound {
        #[command(flatten)]
        presentation: PresentationArg,
        /// Apply Tietze simplification first.
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        output: Option<String>,
    },
    /// Check a witness file.
    Verify {
        #[arg(long)]
        witness: String,
        #[arg(long, value_enum, default_value_t = commands::Strategy::Completion)]
        strategy: commands::Strategy,
    },
    /// Bounds on the number of null-homologous relator replacements between two groups.
    Distance {
        #[command(flatten)]
        presentation: PresentationArg,
        #[arg(long)]
        target: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum MovesCommand {
    /// Local moves with their relator costs.
    List,
    /// Apply `cc@k`, `virt@k` or (Montesinos input) `rational@k=p/q`.
    Apply {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long = "move", value_name = "SPEC")]
        spec: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Virtualization budget.
    #[arg(long, default_value_t = 0)]
    pub virt: usize,
    /// Crossing-change budget.
    #[arg(long, default_value_t = 1)]
    pub cc: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    /// Read fixtures from this directory instead of the bundled copies.
    #[arg(long)]
    pub fixtures: Option<String>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &CliError, json: bool) -> Self {
        let stdout = if json {
            let record = serde_json::json!({
                "error": { "kind": format!("{:?}", e.kind).to_lowercase(), "message": e.message }
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&record).expect("serializable")
            )
        } else {
            String::new()
        };
        Outcome {
            code: e.exit_code(),
            stdout,
            stderr: format!("{e}\n"),
        }
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let config = cli.global.config();
    let result = config.validate().and_then(|()| match &cli.command {
        Command::Invariants(input) => commands::invariants(input, &config),
        Command::Group(g) => commands::group(g, &config),
        Command::Moves(m) => commands::moves(m, &config),
        Command::Search(s) => commands::search(s, &config),
        Command::Selftest(s) => selftest::command(s, &config),
    });
    match result {
        Ok(CommandOutput { code, text }) => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
        Err(e) => Outcome::error(&e, config.json()),
    }
}

/// Text to print and the exit code of a command that ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub text: String,
}

impl CommandOutput {
    pub fn success(text: String) -> Self {
        CommandOutput { code: 0, text }
    }
}
