//! Command-line front end for `hyperfourier`: grid file formats, conversions,
//! transforms, the verification suites and the fast/direct benchmark.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod format;
pub mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hyperfourier::verify::Suite;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable capping worker threads; 0 or unset means automatic.
pub const THREADS_VAR: &str = "HYPERFOURIER_THREADS";

#[derive(Debug, Parser)]
#[command(name = "hyperfourier", version, about = "Quaternion and spacetime Fourier transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert CSV or an RGB image to a grid file, or a grid file to CSV.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: commands::InputKind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a transform on a grid file.
    Transform {
        #[arg(value_enum)]
        transform: commands::Transform,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        path: commands::PathArg,
        #[arg(long)]
        out: PathBuf,
        /// Also write `x,y,|F|` rows for a 2D result.
        #[arg(long)]
        magnitude: Option<PathBuf>,
    },
    /// Run a verification suite and print every check.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Time direct against fast 2D transforms.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [16, 32, 64])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn configure_threads() -> anyhow::Result<()> {
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| anyhow::anyhow!("{THREADS_VAR} must be a non-negative integer"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn execute(cli: Cli) -> anyhow::Result<u8> {
    configure_threads()?;
    match cli.command {
        Command::Convert { input, kind, out } => commands::convert(&input, kind, &out)?,
        Command::Transform { transform, input, path, out, magnitude } => {
            commands::transform(transform, &input, path.into(), &out, magnitude.as_deref())?
        }
        Command::Verify { suite, seed } => {
            let report = commands::verify(suite, seed)?;
            println!("{report}");
            if !report.passed() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Bench { sizes, seed } => print!("{}", commands::format_bench(&commands::bench(&sizes, seed)?)),
    }
    Ok(EXIT_OK)
}

/// Parses `args` and runs the command, mapping errors to exit codes.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
