use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use core_moments::moments::{DEFAULT_DIGITS, DEFAULT_MAX_K};
use core_moments::WorkBudget;
use core_moments_cli::commands::{self, FitKind, Format, GfChoice, MomentKind, Outcome, EXIT_USAGE};

/// Generating functions and moments of (s,s+1)-core partitions with distinct parts.
#[derive(Parser, Debug)]
#[command(name = "core-moments", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,

    /// Decimal places for rendered standardized moments.
    #[arg(long, default_value_t = DEFAULT_DIGITS, global = true)]
    digits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print G_s(q).
    Gf {
        #[arg(long)]
        s: usize,
        /// Route to use; defaults to the closed form up to s = 40 and the recurrence above.
        #[arg(long, value_enum)]
        method: Option<GfChoice>,
    },
    /// Compare G_s(1) with F_(s+1) for s = 1..=max_s.
    Count {
        #[arg(long)]
        max_s: usize,
    },
    /// Exact moments of X_s for k = 0..=max_k.
    Moments {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_K)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "raw")]
        kind: MomentKind,
    },
    /// Fit a closed form for the k-th moment.
    Fit {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "raw")]
        kind: FitKind,
        /// Fixed degree for the polynomial coefficients (default: automatic).
        #[arg(long)]
        degree: Option<usize>,
        /// Number of holdout values of s.
        #[arg(long, default_value_t = 20)]
        holdout: usize,
    },
    /// Limits of the standardized moments against the normal law.
    Limits {
        #[arg(long, default_value_t = 10)]
        max_k: usize,
    },
    /// Cross-check every generating-function route.
    Verify {
        #[arg(long, default_value_t = 40)]
        max_s: usize,
        #[arg(long, default_value_t = 12)]
        brute_max: usize,
    },
    /// Fit, validate and take limits for k = 1..=max_k and write the document.
    Theorems {
        #[arg(long, default_value_t = DEFAULT_MAX_K)]
        max_k: usize,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Outcome {
    let budget = match WorkBudget::from_env() {
        Ok(b) => b,
        Err(e) => return e.into(),
    };
    let format = cli.format;
    let result = match cli.command {
        Command::Gf { s, method } => commands::gf(s, method, format, budget),
        Command::Count { max_s } => commands::count(max_s, format),
        Command::Moments { s, max_k, kind } => commands::moments(s, max_k, kind, format, cli.digits),
        Command::Fit {
            k,
            kind,
            degree,
            holdout,
        } => commands::fit(k, kind, degree, holdout, format),
        Command::Limits { max_k } => commands::limits(max_k, format, cli.digits),
        Command::Verify { max_s, brute_max } => commands::verify(max_s, brute_max, format, budget),
        Command::Theorems { max_k, output } => {
            let outcome = commands::finish(commands::theorems(max_k, format));
            match output {
                Some(path) if outcome.code == 0 => {
                    if let Err(e) = std::fs::write(&path, &outcome.stdout) {
                        return Outcome {
                            stdout: String::new(),
                            stderr: format!("error: cannot write {}: {e}\n", path.display()),
                            code: EXIT_USAGE,
                        };
                    }
                    Ok(Outcome {
                        stdout: format!("wrote {}\n", path.display()),
                        ..Default::default()
                    })
                }
                _ => Ok(outcome),
            }
        }
    };
    commands::finish(result)
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
