use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gkz::cli::{error_document, exit_code, run, Options};
use gkz::error::Error;
use gkz::json::JobSpec;

#[derive(Parser)]
#[command(name = "gkz", version, about = "Exact series solutions of A-hypergeometric systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, homogeneity, kernel basis, volume and rank bound.
    Analyze(Flags),
    /// Regular triangulation, codimension-one faces and certificate.
    Triangulate(Flags),
    /// Stratum index of one or many parameters.
    Strata(Flags),
    /// Fake exponents with minimal-negative-support flags.
    Exponents(Flags),
    /// Canonical or logarithm-free series.
    Series(Flags),
    /// Residual of series against the system.
    Verify(Flags),
    /// Horn series truncation and pole report.
    Horn(Flags),
    /// Numeric values of series at a point.
    Evaluate(Flags),
    /// Homogenized matrix, lifted parameter and restricted series.
    Homogenize(Flags),
}

#[derive(Args)]
struct Flags {
    /// Input JSON file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    input: String,
    /// Truncation order as `p/q`; overrides the input document.
    #[arg(long)]
    truncation: Option<String>,
    /// Seed for the generic homogenizing parameter.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Shell tolerance for `evaluate`.
    #[arg(long, default_value_t = 1e-12)]
    tolerance: f64,
    #[arg(long, default_value = "json", value_parser = ["json"])]
    format: String,
}

fn split(c: Command) -> (&'static str, Flags) {
    match c {
        Command::Analyze(f) => ("analyze", f),
        Command::Triangulate(f) => ("triangulate", f),
        Command::Strata(f) => ("strata", f),
        Command::Exponents(f) => ("exponents", f),
        Command::Series(f) => ("series", f),
        Command::Verify(f) => ("verify", f),
        Command::Horn(f) => ("horn", f),
        Command::Evaluate(f) => ("evaluate", f),
        Command::Homogenize(f) => ("homogenize", f),
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (command, flags) = split(cli.command);
    let opts = Options { truncation: flags.truncation, seed: flags.seed, tolerance: flags.tolerance };
    let result = read_input(&flags.input)
        .and_then(|s| JobSpec::parse(&s))
        .and_then(|job| run(command, &job, &opts));
    let (doc, code) = match result {
        Ok(doc) => (doc, 0),
        Err(e) => (error_document(&e), exit_code(&e) as u8),
    };
    let text = serde_json::to_string_pretty(&doc).expect("serializable");
    // a closed pipe downstream is not an error of ours
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}
