use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "landauer", about = "Collision-model thermodynamics batch runner")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute the runs described by a config document.
    Run {
        /// Path to the key-value config document.
        config: PathBuf,
        /// Output directory; overrides the config's output_dir key.
        #[arg(short, long)]
        output_dir: Option<PathBuf>,
    },
    /// Render a summary.json as a human-readable table.
    Report {
        /// Path to a summary.json produced by `run`.
        summary: PathBuf,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let result = match args.command {
        Command::Run { config, output_dir } => run(&config, output_dir),
        Command::Report { summary } => landauer::cli::report(&summary).map(|table| {
            print!("{table}");
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(config_path: &PathBuf, output_dir: Option<PathBuf>) -> Result<(), landauer::Error> {
    let text = std::fs::read_to_string(config_path)?;
    let spec = landauer::cli::parse_config(&text)?;
    let out_dir = output_dir
        .or_else(|| spec.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let summary = landauer::cli::execute(&spec, &out_dir)?;
    println!(
        "wrote {} run(s) and summary.json to {}",
        summary.runs.len(),
        out_dir.display()
    );
    Ok(())
}
