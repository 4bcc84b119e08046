use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod text;

use commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "ncsym", version, about = "Exact NCSF identities, formal inversion, D-Logs, flows and JC experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify the change-of-basis identities for every composition up to a weight.
    Identities {
        /// Largest composition weight, 1 to 12
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        max_weight: u64,
        /// Comma-separated identity labels, e.g. Lambda-S,Xi-Psi-2.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Print the five families in the Lambda-word basis and check their defining relations.
    Families {
        /// Largest composition weight, 1 to 12
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=12))]
        max_weight: u64,
        /// Comma-separated families: lambda, s, phi, psi, xi.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// Invert F_t = z - tH by one or all methods and compare with the fixed-point oracle.
    Invert {
        #[command(flatten)]
        input: MapInput,
        /// lambda, psi, ci, recurrent, oracle or all.
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// D-Log of F_t in one or all bases, optionally with the BCH formula.
    Dlog {
        #[command(flatten)]
        input: MapInput,
        /// lambda, s, psi, xi or all.
        #[arg(long, default_value = "all")]
        basis: String,
        /// Also sum the BCH formula through this depth (at most the order)
        #[arg(long)]
        bch_depth: Option<usize>,
    },
    /// Formal flow F_t(z, u), symbolic in u or evaluated at a rational u.
    Flow {
        #[command(flatten)]
        input: MapInput,
        /// phi, lambda, s, psi, xi or all.
        #[arg(long, default_value = "phi")]
        basis: String,
        /// Evaluate at u = p/q.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Nilpotent-Jacobian experiment on a map, a generated triangular map or a batch file.
    Jc {
        /// Field H as a JSON map file
        #[arg(long, conflicts_with_all = ["generate", "batch"])]
        map: Option<PathBuf>,
        /// Triangular generator descriptor n,d,seed.
        #[arg(long, value_parser = parse_generator, conflicts_with = "batch")]
        generate: Option<[u64; 3]>,
        /// JSON array of maps or {n, d, seed} descriptors.
        #[arg(long)]
        batch: Option<PathBuf>,
        /// Truncation order T in t
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
        order: u64,
    },
}

#[derive(Args, Debug)]
struct MapInput {
    /// Field H as a JSON map file.
    #[arg(long)]
    map: PathBuf,
    /// Truncation order T in t.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    order: u64,
}

fn parse_generator(text: &str) -> Result<[u64; 3], String> {
    let parts: Vec<u64> = text
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("expected n,d,seed, got `{text}`"))
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Identities { max_weight, only } => commands::identities(*max_weight as usize, only),
        Command::Families { max_weight, only } => commands::families(*max_weight as usize, only),
        Command::Invert { input, method } => commands::invert(&input.map, input.order as usize, method),
        Command::Dlog { input, basis, bch_depth } => commands::dlog(&input.map, input.order as usize, basis, *bch_depth),
        Command::Flow { input, basis, u } => commands::flow(&input.map, input.order as usize, basis, u.as_deref()),
        Command::Jc { map, generate, batch, order } => {
            commands::jc(map.as_deref(), generate.as_ref(), batch.as_deref(), *order as usize)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize"),
        Format::Text => text::render(&outcome.report),
    };
    rendered.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
