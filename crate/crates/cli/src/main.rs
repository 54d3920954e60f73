//! `cflm`: simulate the sheared flame-front equation, tabulate kernel norms,
//! run the estimate certificates and fit decay exponents.
//!
//! Exit status is 0 when every verdict passes, 1 when one fails and 2 on a
//! usage, configuration or I/O error.

mod fit;
mod kernel_norms;
mod lists;
mod simulate;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use cflm_core::io::{parse_config, Config};

#[derive(Parser)]
#[command(name = "cflm", version, about = "Sheared flame-front solver and kernel estimate checks")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory (overrides output.dir).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Random seed (overrides the configured seed).
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Worker threads; falls back to CFLM_THREADS, then to all cores.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the equation and write norms, snapshots and a summary.
    Simulate,
    /// Tabulate L^p norms of the Green's function and its derivatives.
    KernelNorms(kernel_norms::KernelNormsArgs),
    /// Run every inequality certificate and report pass/fail.
    VerifyEstimates(verify::VerifyArgs),
    /// Fit a power law to a norm series and compare with the predicted rate.
    FitDecay(fit::FitArgs),
}

impl Common {
    /// Loads the configuration and applies `--out` and `--seed`.
    pub fn load_config(&self) -> Result<Config> {
        let Some(path) = &self.config else {
            bail!("--config PATH is required for this subcommand");
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg = parse_config(&text).with_context(|| format!("{}", path.display()))?;
        if let Some(out) = &self.out {
            cfg.out_dir = out.clone();
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        Ok(cfg)
    }

    pub fn out_dir(&self, fallback: Option<&Config>) -> PathBuf {
        self.out
            .clone()
            .or_else(|| fallback.map(|c| c.out_dir.clone()))
            .unwrap_or_else(|| PathBuf::from("out"))
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if let Some(n) = flag {
        return Ok(Some(n));
    }
    match std::env::var("CFLM_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .with_context(|| format!("CFLM_THREADS={v:?} is not a thread count")),
        _ => Ok(None),
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = thread_count(cli.common.threads)? {
        if n == 0 {
            bail!("thread count must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Simulate => simulate::run(&cli.common),
        Command::KernelNorms(a) => kernel_norms::run(&cli.common, &a),
        Command::VerifyEstimates(a) => verify::run(&cli.common, &a),
        Command::FitDecay(a) => fit::run(&cli.common, &a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
