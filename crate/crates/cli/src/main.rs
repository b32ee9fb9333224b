use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Outcome;

#[derive(Parser)]
#[command(name = "niho-bent", version, about = "Build and verify Niho bent functions from o-polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Directory for truth tables, polynomials and the JSON report.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled parameters.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a function from a family and verify it.
    Construct(commands::ConstructArgs),
    /// Check maps on GF(2^m) for the o-polynomial property.
    Opoly(commands::OpolyArgs),
    /// Expand a monomial or an o-polynomial into univariate Niho form.
    Expand(commands::ExpandArgs),
    /// Measure the degrees of the equivalent o-monomial table rows.
    Tables(commands::TablesArgs),
    /// Walsh spectrum of a truth table or polynomial.
    Walsh(commands::WalshArgs),
    /// Field tower and catalog overview.
    Info(commands::InfoArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let ctx = commands::Ctx { out: cli.out.clone(), seed: cli.seed };
    if let Some(dir) = &ctx.out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {e}", dir.display());
            return ExitCode::from(2);
        }
    }
    let result: anyhow::Result<Outcome> = match &cli.cmd {
        Cmd::Construct(a) => commands::construct(&ctx, a),
        Cmd::Opoly(a) => commands::opoly(&ctx, a),
        Cmd::Expand(a) => commands::expand(&ctx, a),
        Cmd::Tables(a) => commands::tables(&ctx, a),
        Cmd::Walsh(a) => commands::walsh(&ctx, a),
        Cmd::Info(a) => commands::info(&ctx, a),
    };
    let mut outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    outcome.report.elapsed_ms = start.elapsed().as_millis();
    let json = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
    if let Some(dir) = &ctx.out {
        if let Err(e) = std::fs::write(dir.join("report.json"), format!("{json}\n")) {
            eprintln!("error: cannot write report: {e}");
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    let _ = match cli.format {
        Format::Json => writeln!(stdout, "{json}"),
        Format::Csv => write!(stdout, "{}", outcome.csv),
    };
    if outcome.report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
