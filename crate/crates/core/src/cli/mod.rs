//! Batch driver: `sonine <command> --config run.json [--set key=value] [--out dir] [--threads k]`.
//!
//! Exit status is 0 when every check passes, 1 on a failed check or numerical
//! error and 2 on an invalid configuration.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
pub use commands::{Check, Outcome};
pub use config::{Command, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "sonine",
    version,
    about = "Relaxation, evolution and decay studies for Sonine kernel pairs"
)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// JSON run configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides `output`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Override a leaf field, e.g. `--set kernel.alpha=0.3`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

/// Parse arguments, run, and return the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&args) {
        Ok(report) => {
            for c in &report.checks {
                eprintln!(
                    "{} {}: {:.3e} (tol {:.3e})",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.value,
                    c.tolerance
                );
            }
            eprintln!("wrote {}", report.dir.join("run.json").display());
            if report.passed {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation { .. } => EXIT_CONFIG,
        _ => EXIT_FAILED,
    }
}

/// Result of a completed run.
#[derive(Debug)]
pub struct RunReport {
    pub dir: PathBuf,
    pub checks: Vec<Check>,
    pub passed: bool,
}

pub fn run(args: &Args) -> Result<RunReport> {
    let mut doc = config::load_document(args.config.as_deref())?;
    for s in &args.set {
        config::apply_override(&mut doc, s)?;
    }
    let cfg = config::parse_config(doc)?;
    if let Some(c) = cfg.command {
        if c != args.command {
            return Err(Error::validation(
                "command",
                format!("config is for {}, invoked as {}", c.as_str(), args.command.as_str()),
            ));
        }
    }
    cfg.validate(args.command)?;
    let dir = args
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .unwrap_or_else(|| PathBuf::from("sonine-out"));
    std::fs::create_dir_all(&dir)?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = args.threads {
        if k == 0 {
            return Err(Error::validation("--threads", "must be positive"));
        }
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;
    let threads = pool.current_num_threads();
    let start = Instant::now();
    let outcome = pool.install(|| commands::execute(args.command, &cfg, &dir))?;
    let elapsed = start.elapsed().as_secs_f64();

    let passed = outcome.checks.iter().all(|c| c.passed);
    write_manifest(&dir, args.command, &cfg, &outcome, threads, elapsed, passed)?;
    Ok(RunReport {
        dir,
        checks: outcome.checks,
        passed,
    })
}

fn write_manifest(
    dir: &Path,
    command: Command,
    cfg: &RunConfig,
    outcome: &Outcome,
    threads: usize,
    elapsed: f64,
    passed: bool,
) -> Result<()> {
    let files = outcome
        .files
        .iter()
        .map(|name| {
            let bytes = std::fs::read(dir.join(name))?;
            Ok(json!({
                "path": name,
                "bytes": bytes.len(),
                "sha256": hex(&Sha256::digest(&bytes)),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let manifest = json!({
        "command": command.as_str(),
        "config": cfg,
        "version": env!("CARGO_PKG_VERSION"),
        "threads": threads,
        "wall_clock_seconds": elapsed,
        "outputs": files,
        "checks": outcome.checks,
        "passed": passed,
        "summary": outcome.summary,
    });
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(dir.join("run.json"), text + "\n")?;
    Ok(())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
