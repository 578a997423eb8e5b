use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use filtcat_core::harness::{self, Args};
use filtcat_core::io::Instance;
use filtcat_core::verify::COIM_VS_IM;
use filtcat_core::Error;

/// Exact computations with functors and filtered objects over finite directed posets.
#[derive(Parser, Debug)]
#[command(name = "filtcat", version, after_help = commands_help())]
struct Cli {
    /// Command to run.
    command: String,
    /// Object names, degrees and other positional arguments.
    args: Vec<String>,
    /// Instance file; defaults to the built-in coim-vs-im example.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    name: Option<String>,
    /// Operation kind (ker|coker|im|coim, le|ge, or a generator kind).
    #[arg(long)]
    kind: Option<String>,
    /// Category: fct or filt.
    #[arg(long)]
    cat: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    suite: Option<String>,
    /// Write the resulting instance (with any constructed objects) here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn commands_help() -> String {
    format!("Commands: {}", harness::COMMANDS.join(", "))
}

fn load(path: Option<&PathBuf>) -> Result<Instance, Error> {
    match path {
        Some(p) => Instance::load(p),
        None => Instance::from_json(COIM_VS_IM),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = Args {
        positional: cli.args.clone(),
        name: cli.name.clone(),
        kind: cli.kind.clone(),
        cat: cli.cat.clone(),
        suite: cli.suite.clone(),
        trials: cli.trials,
        seed: cli.seed,
    };
    let result = load(cli.input.as_ref()).and_then(|mut inst| {
        let report = harness::run(&cli.command, &args, &mut inst)?;
        if let Some(out) = &cli.out {
            if cli.command == "generate" {
                std::fs::write(out, report.text())?;
            } else {
                inst.save(out)?;
            }
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            if cli.json {
                print!("{}", report.json_text());
            } else {
                print!("{}", report.text());
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::UnknownCommand(_)) {
                eprintln!("{}", commands_help());
            }
            ExitCode::from(2)
        }
    }
}
