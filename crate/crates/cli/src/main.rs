use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use invar_cli::{commands, selftest, CliError, Report, Source};

/// Exact invariants of plumbing graphs and their representable semigroups.
#[derive(Parser)]
#[command(name = "invar", version)]
struct Cli {
    /// Emit JSON (the only format; accepted for scripts that pass it).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph JSON file.
    file: Option<PathBuf>,
    /// Seifert data instead of a file, e.g. "b0=2;legs=3/1,3/1,7/4,7/4".
    #[arg(long)]
    sf: Option<String>,
}

impl Input {
    fn source(self) -> Result<Source, CliError> {
        Source::from_args(self.file, self.sf)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Lattice data: det, Z_K, Gorenstein and rationality flags.
    GraphInfo {
        #[command(flatten)]
        input: Input,
        /// Include every dual cycle E*_v.
        #[arg(long)]
        duals: bool,
        /// Include the Laufer sequence for the minimal cycle.
        #[arg(long)]
        trace: bool,
    },
    /// Seifert invariants with formula and lattice values side by side.
    SeifertInfo {
        #[command(flatten)]
        input: Input,
    },
    /// Gaps, genus, conductor and symmetry of the representable semigroup.
    Semigroup {
        #[command(flatten)]
        input: Input,
    },
    /// Delta invariant of the curve given by the arrows of a graph file.
    Delta {
        file: PathBuf,
        /// Include the Laufer sequence for s_{[Z_K]+h_C}.
        #[arg(long)]
        trace: bool,
    },
    /// Geometric genus and its equivariant parts for every class.
    Pg {
        #[command(flatten)]
        input: Input,
    },
    /// Replay the reference singularities.
    Selftest,
}

fn run(command: Command) -> Result<Report, CliError> {
    match command {
        Command::GraphInfo { input, duals, trace } => commands::graph_info(&input.source()?, duals, trace),
        Command::SeifertInfo { input } => commands::seifert_info(&input.source()?),
        Command::Semigroup { input } => commands::semigroup_cmd(&input.source()?),
        Command::Delta { file, trace } => commands::delta(&file, trace),
        Command::Pg { input } => commands::pg(&input.source()?),
        Command::Selftest => {
            let (report, failed) = selftest::run();
            print!("{}", report.render());
            if failed > 0 {
                return Err(CliError::Mismatch(failed));
            }
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let selftest = matches!(cli.command, Command::Selftest);
    match run(cli.command) {
        Ok(report) => {
            if !selftest {
                print!("{}", report.render());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
