//! `wht`: classify space expressions, query properties and closed
//! embeddings, and build or check weak-homeomorphism witnesses.
//!
//! Exit status: 0 on success, 1 on verification violations or oracle
//! mismatches, 2 on usage and parse errors, 3 when no constructive witness
//! is available.

mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "wht", version, about = "Weak-homeomorphism classes of zero-dimensional σ-Polish spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Prefix depth for enumeration and verification.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    /// Largest label explored at ℕ-branching nodes [default: 4; 1 for verify].
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    bound: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical class of an expression.
    Classify { expr: String },
    /// Property fingerprint and invariants; with a second expression, the
    /// preservation report for the pair.
    Props { expr: String, other: Option<String> },
    /// Sum and product tables over the eleven classes.
    Table,
    /// Whether the first class is homeomorphic to a closed subspace of the second.
    Embed { source: String, target: String },
    /// Derivation script to the canonical representative, with certificates.
    Witness {
        expr: String,
        /// Also write the JSON document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a witness or certificate document.
    Verify { file: PathBuf },
    /// Admitted prefixes of the presentation of an expression.
    Present { expr: String },
    /// Cross-check symbolic properties against the presentation.
    Oracle { expr: String },
}

/// Result of one invocation: exit status and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs `wht` on `args`, the first of which is the program name.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code() as u8;
            return if e.use_stderr() {
                Invocation { code, stdout: String::new(), stderr: text }
            } else {
                Invocation { code, stdout: text, stderr: String::new() }
            };
        }
    };
    // label-bounded verification samples grow like (bound+1)^depth
    let default_bound = if matches!(cli.command, Command::Verify { .. }) { 1 } else { 4 };
    let bound = cli.bound.unwrap_or(default_bound);
    let opts = commands::Options { format: cli.format, depth: cli.depth as usize, bound };
    let result = match cli.command {
        Command::Classify { expr } => commands::classify(&expr, &opts),
        Command::Props { expr, other } => commands::props(&expr, other.as_deref(), &opts),
        Command::Table => commands::table(&opts),
        Command::Embed { source, target } => commands::embed(&source, &target, &opts),
        Command::Witness { expr, out } => commands::witness(&expr, out.as_deref(), &opts),
        Command::Verify { file } => commands::verify(&file, &opts),
        Command::Present { expr } => commands::present(&expr, &opts),
        Command::Oracle { expr } => commands::oracle(&expr, &opts),
    };
    match result {
        Ok(out) => Invocation { code: out.code, stdout: out.text, stderr: String::new() },
        Err(e) => Invocation { code: e.code, stdout: String::new(), stderr: format!("wht: {}\n", e.message) },
    }
}
