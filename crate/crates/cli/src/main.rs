use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

mod bounds;
mod cm;
mod report;
mod tate;

use report::{Failure, Report};

/// Tate classes of abelian varieties over finite fields, effective bounds and
/// CM elliptic-curve surveys.
#[derive(Debug, Parser)]
#[command(name = "tatelab", version)]
struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Worker threads for parallel surveys (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimensions of Tate-class spaces over every extension F_{q^n}.
    Tate(TateArgs),
    /// Validate a Weil polynomial; optionally show H^r or a base change.
    Weil(WeilArgs),
    /// Evaluate an effective bound.
    #[command(subcommand)]
    Bounds(bounds::BoundsCmd),
    /// Elliptic-curve and quadratic-field experiments.
    #[command(subcommand)]
    Cm(cm::CmCmd),
}

#[derive(Debug, Args)]
struct TateArgs {
    /// Coefficients from the constant term up, e.g. "25,0,10,0,1".
    #[arg(long, required_unless_present = "verify", allow_hyphen_values = true)]
    poly: Option<String>,
    #[arg(long, required_unless_present = "verify")]
    q: Option<u64>,
    /// Largest extension degree listed (default: min(60, degree bound)).
    #[arg(long = "n-max")]
    n_max: Option<u64>,
    /// Also show the polynomial as det(1 - Frob T).
    #[arg(long)]
    reciprocal: bool,
    /// Recompute a saved JSON report and compare.
    #[arg(long, conflicts_with_all = ["poly", "q", "n_max", "reciprocal"])]
    verify: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct WeilArgs {
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    #[arg(long)]
    q: u64,
    /// Show the characteristic polynomial on H^r.
    #[arg(long)]
    r: Option<usize>,
    /// Show the Weil polynomial over F_{q^n}.
    #[arg(long = "base-change")]
    base_change: Option<u32>,
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let text = !cli.json;
    match &cli.command {
        Command::Tate(a) => {
            let r = match &a.verify {
                Some(path) => {
                    let r = tate::verify(path)?;
                    if text {
                        println!("{}: recomputed report matches", path.display());
                    }
                    return Ok(r);
                }
                None => tate::tate_report(
                    a.poly.as_deref().expect("required by clap"),
                    a.q.expect("required by clap"),
                    a.n_max,
                    a.reciprocal,
                )?,
            };
            if text {
                tate::print_tate(&r);
            }
            Ok(r)
        }
        Command::Weil(a) => {
            let r = tate::weil_report(&a.poly, a.q, a.r, a.base_change)?;
            if text {
                tate::print_weil(&r);
            }
            Ok(r)
        }
        Command::Bounds(cmd) => {
            let (r, report) = bounds::run(cmd)?;
            if text {
                bounds::print(&report);
            }
            Ok(r)
        }
        Command::Cm(cmd) => cm::run(cmd, text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: thread pool already initialized: {e}");
        }
    }
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            let elapsed = start.elapsed().as_millis() as u64;
            if cli.timing {
                report.meta.timing_ms = Some(elapsed);
            }
            if cli.json {
                println!("{}", report.to_json());
            } else if cli.timing {
                println!("time: {elapsed} ms");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.render());
            ExitCode::from(f.code)
        }
    }
}
