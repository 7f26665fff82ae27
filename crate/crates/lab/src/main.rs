//! Command-line laboratory for limit functions of rescaled families
//! `f(k_n z_n + k_n ρ_n ζ)/ρ_n^α`: classify the possible limits, print
//! non-normality directions, build concrete rescaling sequences, and check
//! their convergence numerically.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use zalcman_lab::commands::{self, ConstructModeArg, Format, VerifyModeArg};

#[derive(Parser)]
#[command(name = "zalcman-lab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the limit families reachable from a function config
    Classify {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the directions along which the rescaled family is non-normal
    Rays {
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a rescaling recipe and print its first terms with diagnostics
    Construct {
        config: PathBuf,
        /// Target family: power | precomp | exp, with optional key=value parameters
        #[arg(long)]
        target: String,
        /// Extra key=value recipe parameters
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value_t = ConstructModeArg::Faithful)]
        mode: ConstructModeArg,
    },
    /// Measure convergence of a recipe to its claimed limit
    Verify {
        config: PathBuf,
        /// Target family with parameters, as in construct
        #[arg(long)]
        target: String,
        /// Comma-separated n values (default 10,100,...,1000000)
        #[arg(long = "n-schedule")]
        n_schedule: Option<String>,
        #[arg(long = "grid-radius", default_value_t = 2.0)]
        grid_radius: f64,
        /// Grid points per side (odd, at least 5)
        #[arg(long = "grid-n", default_value_t = 21)]
        grid_n: u32,
        /// Pass tolerance (default 1e-9 for exact recipes, 1e-2 otherwise)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = VerifyModeArg::Full)]
        mode: VerifyModeArg,
    },
    /// Map the spherical-derivative field of f(nz) over a disk
    Scan {
        config: PathBuf,
        /// Disk center as re,im
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        nmax: u64,
        /// Lattice points per side (odd, at least 5)
        #[arg(long, default_value_t = 21)]
        points: u32,
    },
    /// Run the exact-identity and invariant suite
    Selftest,
}

fn init_threads() -> Result<()> {
    if let Ok(value) = std::env::var("ZLAB_THREADS") {
        let threads: usize = value
            .parse()
            .with_context(|| format!("ZLAB_THREADS={value:?} is not a thread count"))?;
        if threads == 0 {
            anyhow::bail!("ZLAB_THREADS must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("thread pool")?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Classify { config, format } => commands::cmd_classify(&config, format),
        Command::Rays { config, format } => commands::cmd_rays(&config, format),
        Command::Construct {
            config,
            target,
            params,
            mode,
        } => commands::cmd_construct(&config, &target, &params, mode),
        Command::Verify {
            config,
            target,
            n_schedule,
            grid_radius,
            grid_n,
            tol,
            mode,
        } => commands::cmd_verify(
            &config,
            &target,
            n_schedule.as_deref(),
            grid_radius,
            grid_n,
            tol,
            mode,
        ),
        Command::Scan {
            config,
            center,
            radius,
            nmax,
            points,
        } => commands::cmd_scan(&config, &center, radius, nmax, points),
        Command::Selftest => commands::cmd_selftest(),
    }
}

/// Die silently when a downstream pipe closes (`zalcman-lab ... | head`)
/// instead of panicking mid-print.
fn restore_default_sigpipe() {
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

fn main() -> ExitCode {
    restore_default_sigpipe();
    let cli = Cli::parse();
    let outcome = init_threads().and_then(|()| run(cli));
    match outcome {
        Ok(code) => ExitCode::from(u8::try_from(code).unwrap_or(1)),
        Err(e) => {
            eprintln!("config error: {e:#}");
            ExitCode::from(2)
        }
    }
}
