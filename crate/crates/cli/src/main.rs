use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use webconn_cli::report::{to_json, to_text};
use webconn_cli::{parse_spec, run, CliError, Command, Flags};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Classify,
    Invariants,
    Connection,
    Curvature,
    Rank,
    TraceCheck,
    Analyze,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Classify => Command::Classify,
            Cmd::Invariants => Command::Invariants,
            Cmd::Connection => Command::Connection,
            Cmd::Curvature => Command::Curvature,
            Cmd::Rank => Command::Rank,
            Cmd::TraceCheck => Command::TraceCheck,
            Cmd::Analyze => Command::Analyze,
        }
    }
}

/// Invariants, connection, curvature and rank of planar webs.
#[derive(Debug, Parser)]
#[command(name = "webconn", version)]
struct Args {
    command: Cmd,
    /// Web description file
    file: PathBuf,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Write the report here instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Allow degrees above 6
    #[arg(long)]
    experimental: bool,
}

fn execute(args: &Args) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", args.file.display())))?;
    let spec = parse_spec(&text)?;
    let flags = Flags {
        experimental: args.experimental,
    };
    let report = run(args.command.into(), &spec, flags)?;
    let body = if args.json { to_json(&report) } else { to_text(&report) };
    match &args.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
