use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "liecascade",
    version,
    about = "Exact computations for cascades, symmetric pairs and nilpotent orbits"
)]
struct Cli {
    /// Emit a JSON verification report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Rank bound for the classical series.
    #[arg(long, global = true, default_value_t = 8)]
    max_rank: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximal parabolics with abelian unipotent radical and their symmetric pairs.
    Pairs {
        #[arg(value_parser = ["list"])]
        action: Option<String>,
    },
    /// Kostant cascade of a root system, e.g. `cascade B 3`.
    Cascade {
        family: String,
        rank: usize,
        /// Subset T of simple roots (1-based, comma separated); defaults to all.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Nilpotent orbits of (so_{p+2}, so_p x so_2).
    Orbits {
        #[arg(long)]
        p: usize,
        /// List signed diagrams (real orbits) instead of Young diagrams.
        #[arg(long)]
        signed: bool,
        /// Attach characteristics and evenness.
        #[arg(long)]
        characteristics: bool,
    },
    /// Centralizer of a point of the Cartan subspace, e.g. `--pair B3-1 --line 1,1`.
    Centralizer {
        /// `<type>-<i>` for the maximal parabolic removing the simple root i (1-based).
        #[arg(long)]
        pair: String,
        /// Coefficients of X on the X_K, in cascade order; rationals as `a/b`.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "locus"
        )]
        line: Option<Vec<String>>,
        /// Non-regular locus (rank 2) or special strata (higher rank).
        #[arg(long)]
        locus: bool,
    },
    /// Matrix model checks for one nilpotent K-orbit.
    Model {
        #[arg(long)]
        p: usize,
        /// `shape[:signs][:numerals]`, signs as row leads or the full pattern: `3,1,1:-++:I` or `3,1,1:-+-|+|+:I`.
        #[arg(long)]
        orbit: Option<String>,
        #[arg(long, value_enum)]
        verify: Verify,
        /// Samples for `semisimple-part`.
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Aggregate check of the reference table, special lines, orbit lists and characteristics.
    VerifyAll,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Verify {
    Triple,
    Characteristic,
    Sheet,
    Distinguished,
    SemisimplePart,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        seed: cli.seed,
        max_rank: cli.max_rank,
    };
    let outcome = match cli.command {
        Command::Pairs { .. } => commands::pairs(&ctx),
        Command::Cascade {
            family,
            rank,
            subset,
        } => commands::cascade(&ctx, &family, rank, subset),
        Command::Orbits {
            p,
            signed,
            characteristics,
        } => commands::orbits(&ctx, p, signed, characteristics),
        Command::Centralizer { pair, line, locus } => {
            commands::centralizer(&ctx, &pair, line, locus)
        }
        Command::Model {
            p,
            orbit,
            verify,
            trials,
        } => commands::model(&ctx, p, orbit.as_deref(), verify, trials),
        Command::VerifyAll => commands::verify_all(&ctx),
    };
    match outcome {
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(out) => {
            let body = if cli.json {
                format!("{}\n", out.report.to_json())
            } else {
                format!("{}{}", out.text, out.report.to_text())
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if out.report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
