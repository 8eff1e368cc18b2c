//! `polarkern` — analysis of binary polarization kernels over the erasure
//! channel: validation, polarization behavior, partial distances,
//! self-duality, scaling exponents, design search, and reproduction of the
//! published reference tables.
//!
//! Exit codes: 0 success, 1 domain-invalid input, 2 numerical
//! non-convergence / no polarization, 3 parse or I/O error.

mod commands;
mod support;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use support::CliError;

#[derive(Parser)]
#[command(name = "polarkern", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel file operations.
    Kernel {
        #[command(subcommand)]
        command: KernelCommand,
    },
    /// Polarization-behavior tables.
    Pb {
        #[command(subcommand)]
        command: PbCommand,
    },
    /// Scaling exponent of a polarization-behavior table.
    Mu {
        /// Table file (.json or .csv).
        #[arg(long)]
        pb: PathBuf,
        /// Grid size override.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Partial distances of a kernel.
    Pd { file: PathBuf },
    /// Self-duality check of a kernel.
    Selfdual { file: PathBuf },
    /// Evaluate a doubled product kernel along both table paths.
    Product {
        /// Outer kernel file (must be the 2x2 kernel).
        #[arg(long)]
        outer: PathBuf,
        /// Inner kernel file.
        #[arg(long)]
        inner: PathBuf,
        /// Table to seed the closed-form path with (defaults to the inner
        /// kernel's brute-force table).
        #[arg(long)]
        seed_table: Option<PathBuf>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Kernel design search.
    Search {
        #[command(subcommand)]
        command: SearchCommand,
    },
    /// Cell-by-cell comparison of two tables.
    Compare { a: PathBuf, b: PathBuf },
    /// Monte-Carlo estimate of per-channel erasure probabilities.
    Mc {
        #[arg(long)]
        kernel: PathBuf,
        /// Channel erasure probability.
        #[arg(long)]
        z: f64,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Regenerate the published reference tables and exponents, write the
    /// report bundle, and verify the anchors.
    Reproduce {
        /// Output directory (created if missing).
        #[arg(long, default_value = "reproduction")]
        out: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
    },
}

#[derive(Subcommand)]
enum KernelCommand {
    /// Parse a kernel file and report its polarization flags.
    Validate { file: PathBuf },
}

#[derive(Subcommand)]
enum PbCommand {
    /// Compute a table by the chosen method.
    Compute {
        /// Kernel file (required for brute-force).
        kernel: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: commands::pb::Method,
        /// Inner input for the product methods: a kernel file or a table
        /// (.json/.csv).
        #[arg(long)]
        inner: Option<PathBuf>,
        /// Outer kernel for the composition method (defaults to the 2x2
        /// kernel).
        #[arg(long)]
        outer: Option<PathBuf>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = commands::pb::Format::Json)]
        format: commands::pb::Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Delete a row and each column in turn, ranking candidates by exponent.
    Delete {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        row: usize,
        #[arg(long, value_enum, default_value_t = commands::search::Method::BruteForce)]
        method: commands::search::Method,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Score each row by distance of its midpoint erasure probability from
    /// 1/2 (advisory input for picking the row to delete).
    Rank {
        #[arg(long)]
        base: PathBuf,
    },
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Kernel {
            command: KernelCommand::Validate { file },
        } => commands::validate::run(&file),
        Command::Pb {
            command:
                PbCommand::Compute {
                    kernel,
                    method,
                    inner,
                    outer,
                    format,
                    out,
                },
        } => commands::pb::run(kernel.as_deref(), method, inner.as_deref(), outer.as_deref(), format, out.as_deref()),
        Command::Mu { pb, grid } => commands::mu::run(&pb, grid),
        Command::Pd { file } => commands::pd::run(&file),
        Command::Selfdual { file } => commands::selfdual::run(&file),
        Command::Product {
            outer,
            inner,
            seed_table,
            grid,
        } => commands::product::run(&outer, &inner, seed_table.as_deref(), grid),
        Command::Search {
            command:
                SearchCommand::Delete {
                    base,
                    row,
                    method,
                    grid,
                },
        } => commands::search::run(&base, row, method, grid),
        Command::Search {
            command: SearchCommand::Rank { base },
        } => commands::search::rank(&base),
        Command::Compare { a, b } => commands::compare::run(&a, &b),
        Command::Mc {
            kernel,
            z,
            samples,
            seed,
        } => commands::mc::run(&kernel, z, samples, seed),
        Command::Reproduce { out, grid } => commands::reproduce::run(&out, grid),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if !err.message.is_empty() {
                eprintln!("error: {}", err.message);
            }
            ExitCode::from(err.code)
        }
    }
}
