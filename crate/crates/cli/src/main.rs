use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simuorb_cli::{
    bench_json, bench_text, build_options, parse_order_range, parse_region, run_bench, run_orbits,
    run_plot, run_summary, run_validate, CmdError, OrbitsFormat,
};

/// Enumerate and classify the circular orbits of intersection points made by
/// all chords of a regular n-gon.
#[derive(Parser)]
#[command(name = "simuorb", version, max_term_width = 100)]
struct Cli {
    /// Worker threads (default: all cores; SIMUORB_THREADS as fallback).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Tolerances {
    /// Relative tolerance for radius comparisons.
    #[arg(long)]
    radius_tol: Option<f64>,
    /// Tolerance on the fractional part of a normalized shift.
    #[arg(long)]
    shift_tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Per-orbit rows for one arrangement: radius, classes, cardinality,
    /// multiplicities and representative descriptors with shifts.
    Orbits {
        /// Arrangement order.
        #[arg(long)]
        n: String,
        /// interior, exterior or all.
        #[arg(long, default_value = "all")]
        region: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Output path (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tolerances: Tolerances,
    },
    /// One totals row per order; `--check` compares against the embedded
    /// reference table and fails on any mismatch.
    Summary {
        /// Order or inclusive range, e.g. 12 or 3..10.
        #[arg(long)]
        n: String,
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tolerances: Tolerances,
    },
    /// Cross-check the descriptor pipeline against the brute-force oracle.
    Validate {
        /// Order or inclusive range within 3..=30.
        #[arg(long)]
        n: String,
        #[command(flatten)]
        tolerances: Tolerances,
    },
    /// Static SVG of the arrangement: unit circle, vertices, orbit circles
    /// and intersection points.
    Plot {
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "all")]
        region: String,
        /// Mark the orbits at this radius.
        #[arg(long)]
        highlight_radius: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tolerances: Tolerances,
    },
    /// Wall-time split per order, for tracking in CI.
    Bench {
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tolerances: Tolerances,
    },
}

fn write_output(out: Option<PathBuf>, content: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn thread_count(flag: Option<usize>) -> Option<usize> {
    flag.or_else(|| {
        std::env::var("SIMUORB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Orbits {
            n,
            region,
            format,
            out,
            tolerances,
        } => {
            let range = parse_order_range(&n)?;
            if range.start() != range.end() {
                return Err(CmdError::usage("orbits takes a single order, not a range"));
            }
            let opts = build_options(tolerances.radius_tol, tolerances.shift_tol)?;
            let format = match format {
                Format::Text => OrbitsFormat::Text,
                Format::Csv => OrbitsFormat::Csv,
                Format::Json => OrbitsFormat::Json,
            };
            let rendered = run_orbits(*range.start(), parse_region(&region)?, format, &opts)?;
            write_output(out, &rendered)
        }
        Command::Summary {
            n,
            check,
            format,
            out,
            tolerances,
        } => {
            let range = parse_order_range(&n)?;
            let opts = build_options(tolerances.radius_tol, tolerances.shift_tol)?;
            let json = matches!(format, Format::Json);
            let outcome = run_summary(range, check, json, &opts)?;
            for warning in &outcome.warnings {
                eprintln!("warning: {warning}");
            }
            write_output(out, &outcome.output)?;
            if !outcome.mismatches.is_empty() {
                return Err(CmdError::mismatch(outcome.mismatches.join("\n")));
            }
            Ok(())
        }
        Command::Validate { n, tolerances } => {
            let range = parse_order_range(&n)?;
            let opts = build_options(tolerances.radius_tol, tolerances.shift_tol)?;
            let outcome = run_validate(range, &opts)?;
            print!("{}", outcome.output);
            if outcome.clean {
                Ok(())
            } else {
                Err(CmdError::mismatch(
                    "pipeline and oracle disagree; see the report above",
                ))
            }
        }
        Command::Plot {
            n,
            region,
            highlight_radius,
            out,
            tolerances,
        } => {
            let range = parse_order_range(&n)?;
            if range.start() != range.end() {
                return Err(CmdError::usage("plot takes a single order, not a range"));
            }
            let opts = build_options(tolerances.radius_tol, tolerances.shift_tol)?;
            let svg = run_plot(
                *range.start(),
                parse_region(&region)?,
                highlight_radius,
                &opts,
            )?;
            write_output(out, &svg)
        }
        Command::Bench {
            n,
            format,
            out,
            tolerances,
        } => {
            let range = parse_order_range(&n)?;
            let opts = build_options(tolerances.radius_tol, tolerances.shift_tol)?;
            let rows = run_bench(range, &opts)?;
            let rendered = match format {
                Format::Json => bench_json(&rows),
                _ => bench_text(&rows),
            };
            write_output(out, &rendered)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = thread_count(cli.threads) {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code as u8)
        }
    }
}
