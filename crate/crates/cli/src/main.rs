mod commands;
mod ladder;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{ChiMethod, CliError, DeltaMethod, FanCheck, Outcome};
use output::Format;

/// Exact Clifford-stringy Euler characteristics: local contributions, the δ
/// functions, the toric fan and the χ_cst = χ(Y) verification.
#[derive(Debug, Parser)]
#[command(name = "cstringy", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Worker threads for the parallel enumerations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Local contributions χ_t for t = 1..max-t.
    ChiTable {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_t: u32,
        #[arg(long, value_enum, default_value_t = ChiMethod::Direct)]
        method: ChiMethod,
    },
    /// The rational function δ[j,a], or its value at a point.
    Delta {
        #[arg(long, value_parser = clap::value_parser!(u32))]
        j: u32,
        /// Omit to run every method and compare.
        #[arg(long, value_enum)]
        method: Option<DeltaMethod>,
        /// Evaluate at this rational, e.g. 0 or -1/2.
        #[arg(long, allow_negative_numbers = true)]
        eval: Option<String>,
    },
    /// Maximal cones of the toric resolution for l = 1..14.
    Fan {
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "smooth,convex")]
        checks: Vec<FanCheck>,
    },
    /// χ_cst(Z) = χ(Y) for n = 2..n-max plus the invariant ladder.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        n_max: u64,
    },
    /// Classical, pulled-back and modified discrepancies up to corank k.
    Discrepancies {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::ChiTable { max_t, method } => commands::chi_table(*max_t, *method),
        Command::Delta { j, method, eval } => commands::delta(*j, *method, eval.as_deref()),
        Command::Fan { l, checks } => commands::fan(*l, checks),
        Command::Verify { n_max } => commands::verify(*n_max),
        Command::Discrepancies { k } => commands::discrepancies(*k),
    }
}

fn emit(outcome: &Outcome, cli: &Cli) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut out = BufWriter::new(&mut sink);
    output::render(&outcome.sections, cli.format, &mut out)?;
    out.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("failed: {msg}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&outcome, &cli) {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    match &outcome.failure {
        None => ExitCode::SUCCESS,
        Some(msg) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
