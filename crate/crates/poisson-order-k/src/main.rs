use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use poisson_order_k::cli;

/// Largest k-sweep accepted without the --large-k opt-in: each root
/// solve is O(k^2), so a full sweep is O(k_max^3).
const DESK_SCALE_K_MAX: u32 = 2000;

#[derive(Parser)]
#[command(
    name = "poisson-order-k",
    version,
    about = "Scaled pmf of the Poisson distribution of order k: tables, finite differences, monotonicity thresholds"
)]
struct Args {
    /// Write output to this path instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: number of processors).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recurrence,
    Km,
    Brute,
    All,
}

impl From<Method> for cli::PmfMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Recurrence => cli::PmfMethod::Recurrence,
            Method::Km => cli::PmfMethod::Km,
            Method::Brute => cli::PmfMethod::Brute,
            Method::All => cli::PmfMethod::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the scaled pmf p_0..p_{n_max} as CSV.
    Pmf {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: f64,
        #[arg(long = "n-max")]
        n_max: u32,
        #[arg(long, value_enum, default_value = "recurrence")]
        method: Method,
    },
    /// Scan all first-block finite differences; exits 1 if any is non-positive.
    Diff {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: f64,
    },
    /// Check strict tail decrease for one (k, lambda); exits 1 on violation.
    Verify {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: f64,
        /// Inspect the tail out to this index (default max(6k, 200)).
        #[arg(long)]
        cap: Option<u32>,
        /// Emit a single CSV row instead of the plain-text report.
        #[arg(long)]
        csv: bool,
    },
    /// Solve the lambda thresholds for a range of orders (table CSV).
    Thresholds {
        #[arg(long = "k-min")]
        k_min: u32,
        #[arg(long = "k-max")]
        k_max: u32,
        /// Relative tolerance for the root solves.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Add r_k, t_k and the necessary bound 4/(k+1) as columns.
        #[arg(long)]
        full: bool,
        /// Allow k-max beyond 2000 (hours of CPU at the published scale).
        #[arg(long = "large-k")]
        large_k: bool,
    },
    /// Sweep thresholds and fit 1/lambda_{k+1,k+2} to a straight line in k.
    Fit {
        #[arg(long = "k-min")]
        k_min: u32,
        #[arg(long = "k-max")]
        k_max: u32,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Thin the sweep to a log-spaced subset above k = 200.
        #[arg(long)]
        thin: bool,
        /// Write inverse-threshold and fitted-line data to this CSV.
        #[arg(long)]
        fig4: Option<PathBuf>,
        /// Write signed fit residuals to this CSV.
        #[arg(long)]
        fig5: Option<PathBuf>,
        #[arg(long = "large-k")]
        large_k: bool,
    },
    /// Probe the sufficient bound 9/(4k-1) per order; exits 1 on any failure.
    ConjectureScan {
        #[arg(long = "k-min")]
        k_min: u32,
        #[arg(long = "k-max")]
        k_max: u32,
        /// Inspect tails out to cap-mult * k.
        #[arg(long = "cap-mult", default_value_t = 6)]
        cap_mult: u32,
    },
}

fn check_scale(k_max: u32, large_k: bool) -> Result<(), String> {
    if k_max > DESK_SCALE_K_MAX {
        if large_k {
            eprintln!("warning: sweeping to k = {k_max}; each solve is O(k^2), expect a long run");
        } else {
            return Err(format!(
                "k-max {k_max} exceeds the built-in limit {DESK_SCALE_K_MAX}; pass --large-k to proceed"
            ));
        }
    }
    Ok(())
}

fn open_out(path: &Option<PathBuf>) -> std::io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn run(args: Args) -> Result<bool, cli::RunError> {
    let mut out = open_out(&args.out).map_err(poisson_order_k::Error::from)?;
    let verified = match args.command {
        Command::Pmf {
            k,
            lambda,
            n_max,
            method,
        } => {
            cli::cmd_pmf(k, lambda, n_max, method.into(), &mut out)?;
            true
        }
        Command::Diff { k, lambda } => cli::cmd_diff(k, lambda, &mut out)?,
        Command::Verify {
            k,
            lambda,
            cap,
            csv,
        } => cli::cmd_verify(k, lambda, cap, csv, &mut out)?,
        Command::Thresholds {
            k_min,
            k_max,
            tol,
            full,
            large_k,
        } => {
            check_scale(k_max, large_k).map_err(cli::RunError::Usage)?;
            cli::cmd_thresholds(k_min, k_max, tol, full, &mut out)?;
            true
        }
        Command::Fit {
            k_min,
            k_max,
            tol,
            thin,
            fig4,
            fig5,
            large_k,
        } => {
            check_scale(k_max, large_k).map_err(cli::RunError::Usage)?;
            let mut fig4 = match &fig4 {
                Some(p) => Some(BufWriter::new(
                    File::create(p).map_err(poisson_order_k::Error::from)?,
                )),
                None => None,
            };
            let mut fig5 = match &fig5 {
                Some(p) => Some(BufWriter::new(
                    File::create(p).map_err(poisson_order_k::Error::from)?,
                )),
                None => None,
            };
            cli::cmd_fit(
                k_min,
                k_max,
                tol,
                thin,
                &mut out,
                fig4.as_mut().map(|w| w as &mut dyn Write),
                fig5.as_mut().map(|w| w as &mut dyn Write),
            )?;
            true
        }
        Command::ConjectureScan {
            k_min,
            k_max,
            cap_mult,
        } => cli::cmd_conjecture_scan(k_min, k_max, cap_mult, &mut out)?,
    };
    out.flush().map_err(poisson_order_k::Error::from)?;
    Ok(verified)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(jobs) = args.jobs {
        // ignore failure: the global pool can only be configured once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(cli::RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(cli::RunError::Lib(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err))
        }
    }
}
