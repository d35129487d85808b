use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use cpint::harness::{oracle_convolve, run_suite, OracleConfig, PropertyReport, SUITES};
use cpint::io::{samples_to_csv, FunctionFile, Kind};
use cpint::{convolve_bv, mollify, ExtReal};

/// Continuous primitive integral toolkit.
#[derive(Parser)]
#[command(name = "cpint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integral of a distribution over [a, b]; `-inf` and `inf` are accepted.
    Integrate {
        #[arg(long)]
        f: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: ExtReal,
        #[arg(long, allow_hyphen_values = true)]
        b: ExtReal,
    },
    /// Alexiewicz norm of a distribution.
    Norm {
        #[arg(long)]
        f: PathBuf,
        /// Use sup |F| instead of max F - min F.
        #[arg(long)]
        prime: bool,
    },
    /// Total variation of a BV function.
    Variation {
        #[arg(long)]
        g: PathBuf,
        /// Variation of the right-continuous representative.
        #[arg(long)]
        essential: bool,
    },
    /// Convolution f ∗ g with a BV (or L1) kernel.
    Convolve {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write samples as CSV.
        #[arg(long, requires = "grid")]
        sample: Option<PathBuf>,
        /// Sampling grid LO:HI:STEP (closed at both ends).
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// f ∗ g_t with g_t(x) = g(x/t)/t; prints the result as JSON.
    Mollify {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distributional pairing ⟨f, φ⟩.
    Pair {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        phi: PathBuf,
    },
    /// Run a property suite (or `all`).
    Check {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Brute-force reference values.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Refined Riemann–Stieltjes sums for (f ∗ g)(x).
    Convolve {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

fn read(path: &PathBuf) -> Result<FunctionFile> {
    FunctionFile::read(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_grid(text: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        bail!("grid must be LO:HI:STEP, got `{text}`");
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().with_context(|| format!("bad grid value `{p}`")))
        .collect::<Result<_>>()?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        bail!("grid needs finite LO <= HI and STEP > 0");
    }
    Ok((lo, hi, step))
}

/// Exit status 1 when a check reports failures; errors map to 2 in `main`.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Integrate { f, a, b } => {
            let f = read(&f)?.to_distribution()?;
            println!("{}", f.integral(a, b));
        }
        Command::Norm { f, prime } => {
            let f = read(&f)?.to_distribution()?;
            println!("{}", if prime { f.alexiewicz_norm_prime() } else { f.alexiewicz_norm() });
        }
        Command::Variation { g, essential } => {
            let g = read(&g)?.to_bv()?;
            println!("{}", if essential { g.essential_variation() } else { g.variation() });
        }
        Command::Convolve { f, g, out, sample, grid } => {
            let f = read(&f)?.to_distribution()?;
            let g = read(&g)?.to_bv()?;
            let h = convolve_bv(&f, &g);
            FunctionFile::from_rep(Kind::Bv, h.rep()).write(&out)?;
            if let (Some(path), Some(text)) = (sample, grid) {
                let (lo, hi, step) = parse_grid(&text)?;
                fs::write(&path, samples_to_csv(&h.rep().sample(lo, hi, step)))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Command::Mollify { f, g, t, out } => {
            let f = read(&f)?.to_distribution()?;
            let g = read(&g)?.to_l1()?;
            let file = FunctionFile::from_distribution(&mollify(&f, &g, t)?);
            match out {
                Some(path) => file.write(path)?,
                None => println!("{}", file.to_json()),
            }
        }
        Command::Pair { f, phi } => {
            let f = read(&f)?.to_distribution()?;
            let phi = read(&phi)?.to_test()?;
            println!("{}", f.pairing(&phi));
        }
        Command::Check { suite, seed, trials, report } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let reports: Vec<PropertyReport> =
                names.iter().map(|n| run_suite(n, seed, trials)).collect::<cpint::Result<_>>()?;
            for r in &reports {
                println!(
                    "{:<20} trials {:>5}  failures {:>4}  worst_slack {:+.3e}  {:.2}s",
                    r.suite, r.trials, r.failures, r.worst_slack, r.elapsed
                );
            }
            if let Some(path) = report {
                let json = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])?
                } else {
                    serde_json::to_string_pretty(&reports)?
                };
                fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            if reports.iter().any(|r| r.failures > 0) {
                return Ok(1);
            }
        }
        Command::Oracle { which: OracleCommand::Convolve { f, g, x, tol } } => {
            let f = read(&f)?.to_distribution()?;
            let g = read(&g)?.to_bv()?;
            let cfg = OracleConfig { tolerance: tol, ..OracleConfig::default() };
            println!("{}", oracle_convolve(&f, &g, x, &cfg)?);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
