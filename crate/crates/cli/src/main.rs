use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use ott::bench::{self, BenchConfig, Family};
use ott::driver::{self, DriverError, Mode};

/// Exit statuses.
const OK: u8 = 0;
const FAILED: u8 = 1;
const PARSE: u8 = 2;
const USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ott",
    version,
    about = "Proof checker for type theory without definitional equality"
)]
struct Cli {
    /// Print line-delimited JSON records instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include step counters and timings in text output.
    #[arg(long, global = true)]
    steps: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every obligation in a script.
    Check { file: PathBuf },
    /// Run only the `infer` items of a script.
    Infer { file: PathBuf },
    /// Run only the `elab` items of a script.
    Elab { file: PathBuf },
    /// Check a generated family at several sizes and fit the scaling.
    Bench {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: bench::BenchError| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(OK),
                _ => ExitCode::from(USAGE),
            };
        }
    };
    ExitCode::from(run(&cli))
}

fn run(cli: &Cli) -> u8 {
    let (file, mode) = match &cli.command {
        Command::Check { file } => (file, Mode::Check),
        Command::Infer { file } => (file, Mode::Infer),
        Command::Elab { file } => (file, Mode::Elab),
        Command::Bench {
            family,
            sizes,
            seed,
            reps,
        } => {
            let cfg = BenchConfig {
                family: *family,
                sizes: sizes.clone(),
                repetitions: *reps,
                seed: *seed,
            };
            return run_bench(cli, &cfg);
        }
    };
    match driver::run_script(file, mode) {
        Ok(records) => {
            for r in &records {
                if cli.json {
                    println!("{}", r.to_json());
                } else {
                    println!("{}", r.render(cli.steps));
                }
            }
            if driver::exit_code(&records) == 0 {
                OK
            } else {
                FAILED
            }
        }
        Err(e @ DriverError::Parse { .. }) => {
            eprintln!("error: {e}");
            PARSE
        }
        Err(e @ DriverError::Io { .. }) => {
            eprintln!("error: {e}");
            USAGE
        }
    }
}

fn run_bench(cli: &Cli, cfg: &BenchConfig) -> u8 {
    let report = match bench::run(cfg) {
        Ok(r) => r,
        Err(e @ bench::BenchError::Rejected { .. }) => {
            eprintln!("error: {e}");
            return FAILED;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return USAGE;
        }
    };
    if cli.json {
        for line in report.to_json_lines() {
            println!("{line}");
        }
    } else {
        println!("{:>10} {:>14} {:>14}", "size", "steps", "ns");
        for row in &report.rows {
            println!("{:>10} {:>14} {:>14}", row.size, row.steps, row.nanos);
        }
        match &report.fit {
            Some(f) => println!(
                "{}: slope {:.3}, intercept {:.3}: {}",
                report.family,
                f.slope,
                f.intercept,
                if report.pass { "pass" } else { "fail" }
            ),
            None => println!("{}: too few sizes to fit a slope", report.family),
        }
    }
    match &report.fit {
        Some(_) if !report.pass => FAILED,
        _ => OK,
    }
}
