//! `worm3 certify|select|kernel|norms|nebenhulle --config <path>`.

pub mod commands;
pub mod config;

use crate::error::Error;
use clap::{Args, Parser, Subcommand};
use config::RunConfig;
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CERT_FAIL: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_NONCONVERGENT: i32 = 4;

pub const THREADS_ENV: &str = "WORM3_THREADS";

#[derive(Debug, Parser)]
#[command(name = "worm3", version, about = "Worm domains in C^3: certification, kernels, norms, extension")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML run configuration
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (overrides out_dir in the config)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for sampling commands (overrides the config)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; also read from WORM3_THREADS
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the boundary and test the restricted Levi form
    Certify(Common),
    /// Choose c± for the two-sided profile
    Select(Common),
    /// Scan the model kernel against its asymptotics
    Kernel(Common),
    /// Tabulate norm integrals with Monte-Carlo cross-checks
    Norms(Common),
    /// Cauchy extension demo
    Nebenhulle(Common),
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::NonConvergent(_) | Error::GridTooCoarse { .. } => EXIT_NONCONVERGENT,
        _ => EXIT_CONFIG,
    }
}

fn missing(section: &str) -> Error {
    Error::Config(format!("config has no [{section}] section"))
}

fn dispatch(cmd: &Command, cfg: &RunConfig, common: &Common) -> crate::Result<commands::Outcome> {
    let out = common.out.clone().or_else(|| cfg.out_dir.clone()).unwrap_or_else(|| PathBuf::from("worm3-out"));
    match cmd {
        Command::Certify(_) => commands::cmd_certify(cfg.certify.as_ref().ok_or_else(|| missing("certify"))?, common.seed, &out),
        Command::Select(_) => commands::cmd_select(cfg.select.as_ref().ok_or_else(|| missing("select"))?, &out),
        Command::Kernel(_) => commands::cmd_kernel(cfg.kernel.as_ref().ok_or_else(|| missing("kernel"))?, &out),
        Command::Norms(_) => commands::cmd_norms(cfg.norms.as_ref().ok_or_else(|| missing("norms"))?, common.seed, &out),
        Command::Nebenhulle(_) => {
            commands::cmd_nebenhulle(cfg.nebenhulle.as_ref().ok_or_else(|| missing("nebenhulle"))?, &out)
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let common = match &cli.command {
        Command::Certify(c) | Command::Select(c) | Command::Kernel(c) | Command::Norms(c) | Command::Nebenhulle(c) => c,
    };
    let cfg = match RunConfig::load(&common.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("worm3: {e}");
            return EXIT_CONFIG;
        }
    };
    let env_threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok());
    let threads = common.threads.or(env_threads).or(cfg.threads).unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("worm3: cannot start thread pool: {e}");
            return EXIT_CONFIG;
        }
    };
    match pool.install(|| dispatch(&cli.command, &cfg, common)) {
        Ok(o) => {
            println!("{}", o.message);
            for f in &o.files {
                println!("wrote {}", f.display());
            }
            if o.pass {
                EXIT_OK
            } else {
                EXIT_CERT_FAIL
            }
        }
        Err(e) => {
            eprintln!("worm3: {e}");
            exit_code(&e)
        }
    }
}
