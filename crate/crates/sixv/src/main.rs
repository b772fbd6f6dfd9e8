use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sixv::cli::{self, CliOptions};

/// Exact partition functions of the six-vertex model with domain wall
/// boundary conditions: determinant representations, brute-force oracles,
/// and a property-verification harness.
#[derive(Parser)]
#[command(name = "sixv", version)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// JSON job spec file; omit to use the subcommand's defaults.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,

    /// Overrides the spec-level seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write results to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Split brute-force enumeration across threads (deterministic
    /// reduction order).
    #[arg(long, global = true)]
    parallel: bool,

    /// Dump intermediate quantum states to stderr (qism representation).
    #[arg(long, global = true, hide = true)]
    dump_states: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one representation at one parameter set.
    Compute,
    /// Run the property matrix; exit 0 only if every check passes.
    Verify,
    /// Count (and optionally dump) domain-wall configurations.
    Enumerate,
    /// Wall-time table per representation per lattice size.
    Bench,
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let spec: Value = match &args.spec {
        Some(path) => match fs::read_to_string(path) {
            Ok(text) => match serde_json::from_str(&text) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: bad JSON in {}: {e}", path.display());
                    return ExitCode::from(cli::EXIT_SPEC_ERROR as u8);
                }
            },
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(cli::EXIT_SPEC_ERROR as u8);
            }
        },
        None => json!({}),
    };
    let opts = CliOptions {
        seed: args.seed,
        parallel: args.parallel,
        dump_states: args.dump_states,
    };
    let outcome = match args.command {
        Command::Compute => cli::run_compute(&spec, &opts).map(|v| (v.to_string() + "\n", 0)),
        Command::Enumerate => cli::run_enumerate(&spec, &opts).map(|v| (v.to_string() + "\n", 0)),
        Command::Bench => cli::run_bench(&spec, &opts).map(|v| (v.to_string() + "\n", 0)),
        Command::Verify => cli::run_verify(&spec, &opts).map(|(lines, all_pass)| {
            let mut text = String::new();
            for line in &lines {
                text.push_str(&line.to_string());
                text.push('\n');
            }
            let code = if all_pass { 0 } else { cli::EXIT_PROPERTY_FAILURE };
            (text, code)
        }),
    };
    match outcome {
        Ok((text, code)) => {
            if let Err(e) = emit(&args.out, &text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(cli::EXIT_SPEC_ERROR as u8);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code_for(&e) as u8)
        }
    }
}
