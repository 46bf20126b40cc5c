use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use k3cy_cli::output::render;
use k3cy_cli::{commands, verify_family, verify_scenarios, CliError, CliResult, Scenario, Settings};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "k3cy", version, about = "Exact and numeric checks for order-4 K3 quotients and their periods")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Read the JSON input from this file instead of stdin.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the JSON output to this file instead of stdout.
    #[arg(long = "out", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Acceptance tolerance for numeric comparisons.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tolerance: f64,
    /// Significant digits of printed floating-point values.
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    /// Step budget for each numeric integration.
    #[arg(long, global = true)]
    max_steps: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Singular fibers of y^2 = x^3 + a(s) x.
    AnalyzeFibration,
    /// Discriminant forms and complement checks.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Fixed-locus, eigenspace and Hodge-number bookkeeping.
    #[command(subcommand)]
    Hodge(HodgeCmd),
    /// Genus, holomorphic forms and automorphism eigenvalues of a cyclic cover.
    Genus,
    /// Polynomial identity behind a quotient map.
    VerifyQuotient,
    /// Picard-Fuchs operators of z^N = r^A (r-1)^B (r-lambda)^C.
    #[command(subcommand)]
    Pf(PfCmd),
    /// Replay every check of the bundled families (or of a scenario file given with --in).
    VerifyFamily {
        /// Scenario names (ysi, yf2, yf3, wb2, m) or "all".
        names: Vec<String>,
        /// Check independent scenarios on separate threads.
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    Discriminant,
    Opposite,
    Compatible,
}

#[derive(Subcommand)]
enum HodgeCmd {
    Chi,
    Solve,
    Cy,
}

#[derive(Subcommand)]
enum PfCmd {
    Verify,
    Exponents,
    Monodromy,
    Period,
}

fn read_input(path: &Option<PathBuf>) -> CliResult<Value> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn run(cli: &Cli, settings: &Settings) -> CliResult<Value> {
    let input = || read_input(&cli.global.input);
    match &cli.command {
        Command::AnalyzeFibration => commands::analyze_fibration(&input()?),
        Command::Lattice(LatticeCmd::Discriminant) => commands::lattice_discriminant(&input()?),
        Command::Lattice(LatticeCmd::Opposite) => commands::lattice_opposite(&input()?),
        Command::Lattice(LatticeCmd::Compatible) => commands::lattice_compatible(&input()?),
        Command::Hodge(HodgeCmd::Chi) => commands::hodge_chi(&input()?),
        Command::Hodge(HodgeCmd::Solve) => commands::hodge_solve(&input()?),
        Command::Hodge(HodgeCmd::Cy) => commands::hodge_cy(&input()?),
        Command::Genus => commands::genus(&input()?),
        Command::VerifyQuotient => commands::verify_quotient(&input()?),
        Command::Pf(PfCmd::Verify) => commands::pf_verify(&input()?),
        Command::Pf(PfCmd::Exponents) => commands::pf_exponents(&input()?),
        Command::Pf(PfCmd::Monodromy) => commands::pf_monodromy(&input()?, settings),
        Command::Pf(PfCmd::Period) => commands::pf_period(&input()?),
        Command::VerifyFamily { names, .. } => match (&cli.global.input, names.is_empty()) {
            (Some(_), true) => {
                let scenario: Scenario = serde_json::from_value(input()?)
                    .map_err(|e| CliError::usage(format!("invalid scenario: {e}")))?;
                verify_scenarios(&[scenario], settings)
            }
            (Some(_), false) => Err(CliError::usage("give scenario names or --in, not both")),
            (None, _) => verify_family(names, settings),
        },
    }
}

fn emit(text: &str, path: &Option<PathBuf>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")),
        None => writeln!(io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        tolerance: cli.global.tolerance,
        precision: cli.global.precision,
        max_steps: cli.global.max_steps,
        parallel: matches!(cli.command, Command::VerifyFamily { parallel: true, .. }),
    };
    let (body, code) = match run(&cli, &settings) {
        Ok(v) => (Some(v), 0),
        Err(CliError::Mismatch(v)) => (Some(v), 4),
        Err(e) => {
            let err = json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{}", render(err, settings.precision));
            (None, e.exit_code())
        }
    };
    if let Some(v) = body {
        if let Err(e) = emit(&render(v, settings.precision), &cli.global.output) {
            eprintln!("cannot write output: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code as u8)
}
