use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sogkit::cli::{input_error_outcome, parse_files, run_command, Invocation, VERBS};

/// Checks and constructions on finitely generated abelian groups, lattice
/// homomorphisms and refinement monoids; prints a JSON certificate.
#[derive(Parser)]
#[command(name = "sogkit", version, after_help = format!("verbs: {}", VERBS.join(", ")))]
struct Args {
    verb: String,
    /// Input files (schema "sogkit/1"); objects from all files share one namespace.
    #[arg(long = "in", required = true, num_args = 1..)]
    inputs: Vec<PathBuf>,
    /// Object the verb acts on; optional when only one object fits.
    #[arg(long)]
    target: Option<String>,
    /// Further objects the verb needs, in order.
    #[arg(long = "with")]
    with: Vec<String>,
    /// Cross-check with the brute-force implementations.
    #[arg(long)]
    oracle: bool,
    /// Element bound for brute-force enumeration.
    #[arg(long)]
    budget: Option<usize>,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = match parse_files(&args.inputs) {
        Ok(ws) => run_command(
            &ws,
            &Invocation {
                verb: args.verb.clone(),
                target: args.target,
                with: args.with,
                oracle: args.oracle,
                budget: args.budget,
            },
        ),
        Err(e) => {
            eprintln!("sogkit: {e}");
            input_error_outcome(&args.verb, &e)
        }
    };
    let text = outcome.render();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("sogkit: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.code as u8)
}
