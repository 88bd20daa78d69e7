use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use unsharp_cli::{read_input, run, CliError, Command, Format};

#[derive(Parser)]
#[command(
    name = "unsharp",
    version,
    about = "Joint measurability, covariant spin POMs and classical maps for qubits"
)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// JSON input: a file path, inline JSON, or `-` for stdin
    #[arg(long, short, global = true, default_value = "-")]
    input: String,

    /// Output file (stdout when omitted)
    #[arg(long, short, global = true)]
    output: Option<std::path::PathBuf>,

    /// Seed for randomized estimates; UNSHARP_SEED takes precedence when set
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format; tables default to csv, reports to json
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("UNSHARP_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("UNSHARP_SEED={v:?} is not an unsigned integer"))),
        Err(std::env::VarError::NotPresent) => Ok(flag),
        Err(e) => Err(CliError::Input(format!("UNSHARP_SEED: {e}"))),
    }
}

fn execute(args: &Args) -> Result<(), CliError> {
    let seed = seed(args.seed)?;
    let input = read_input(&args.input)?;
    let out = run(args.command, &input, seed, args.format)?;
    match &args.output {
        Some(path) => std::fs::write(path, out).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(out.as_bytes())
            .map_err(|e| CliError::Output(e.to_string())),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("unsharp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
