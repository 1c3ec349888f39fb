//! Library side of the `mbcs` command-line tool.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::path::PathBuf;

use anyhow::Result;
use clap::{Parser, Subcommand};
use mbcs_core::dist::Mode;

#[derive(Debug, Parser)]
#[command(
    name = "mbcs",
    version,
    about = "Multiboson correlation sampling: exact probabilities, sampling and verification"
)]
pub struct Cli {
    /// Worker threads; changes speed only, never output.
    #[arg(long, global = true, value_name = "COUNT")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a Haar-random unitary as JSON.
    GenUnitary {
        /// Matrix dimension M.
        #[arg(long)]
        modes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Enumerate the exact event distribution.
    Probs {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Draw exact samples and compare them with the exact distribution.
    Sample {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Number of draws.
        #[arg(long, value_name = "COUNT", default_value_t = 10_000)]
        n: usize,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        mode: Option<Mode>,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        /// hom, beat, marginals, normalization, gaussian or perm.
        #[arg(long)]
        suite: verify::Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

/// Runs the parsed command; `Ok(false)` means a verification suite failed.
pub fn run(cli: Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global()?;
    }
    match cli.command {
        Command::GenUnitary { modes, seed, out } => {
            let dir = output::resolve_out_dir(out.as_deref(), None);
            let path = commands::gen_unitary(modes, seed, &dir)?;
            println!("{}", path.display());
        }
        Command::Probs { config, mode, out } => {
            let (cfg, base) = config::RunConfig::load(&config)?;
            let dir = output::resolve_out_dir(out.as_deref(), cfg.out_dir.as_deref());
            let summary = commands::probs(&cfg, &base, mode.unwrap_or(cfg.mode), &dir)?;
            print!("{}", output::to_json(&summary)?);
        }
        Command::Sample {
            config,
            n,
            seed,
            mode,
            out,
        } => {
            let (cfg, base) = config::RunConfig::load(&config)?;
            let dir = output::resolve_out_dir(out.as_deref(), cfg.out_dir.as_deref());
            let seed = seed.unwrap_or(cfg.seed);
            let summary = commands::sample(&cfg, &base, mode.unwrap_or(cfg.mode), n, seed, &dir)?;
            print!("{}", output::to_json(&summary)?);
        }
        Command::Verify { suite, seed, out } => {
            let report = verify::run(suite, seed)?;
            let dir = output::resolve_out_dir(out.as_deref(), None);
            output::write_json(
                &dir,
                &format!(
                    "verify_{}.json",
                    serde_json::to_value(suite)?.as_str().unwrap_or("suite")
                ),
                &report,
            )?;
            print!("{}", output::to_json(&report)?);
            return Ok(report.passed);
        }
    }
    Ok(true)
}
