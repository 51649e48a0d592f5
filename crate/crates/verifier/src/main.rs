use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use holonomy_core::scalar::DEFAULT_EPSILON;
use holonomy_verifier::corpus::run_corpus;
use holonomy_verifier::output::color_enabled;
use holonomy_verifier::{fuzz, parse_manifest, run_with, Document, FuzzConfig, ScalarMode};

/// Verify torsion identities of G2 and Spin(7) structures on Lie algebras.
#[derive(Parser)]
#[command(name = "hf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on one manifest.
    Verify {
        manifest: PathBuf,
        /// Override the manifest's scalar mode.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Relative tolerance in float mode.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the universal identities on seeded random instances.
    Fuzz {
        #[arg(long, value_parser = clap::value_parser!(u8).range(7..=8))]
        dim: u8,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturb one curvature component of every random connection.
        #[arg(long)]
        corrupt: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run all bundled manifests, including the negative fixtures.
    Corpus {
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;

fn emit(doc: &Document, json: Option<PathBuf>) -> anyhow::Result<()> {
    match json {
        Some(p) if p.as_os_str() == "-" => {
            std::io::stdout().write_all(doc.to_json().as_bytes())?;
        }
        Some(p) => {
            std::fs::write(&p, doc.to_json())
                .with_context(|| format!("writing {}", p.display()))?;
            print!("{}", doc.to_text(color_enabled()));
        }
        None => print!("{}", doc.to_text(color_enabled())),
    }
    Ok(())
}

/// Builds the document for a command; errors are invalid input.
fn document(command: Command) -> anyhow::Result<(Document, Option<PathBuf>)> {
    Ok(match command {
        Command::Verify {
            manifest,
            mode,
            tolerance,
            json,
        } => {
            let m = parse_manifest(&manifest)?;
            let mode = match mode {
                Some(Mode::Exact) => ScalarMode::Exact,
                Some(Mode::Float) => ScalarMode::Float,
                None => m.scalar_mode,
            };
            let epsilon = match tolerance {
                None => DEFAULT_EPSILON,
                Some(_) if mode == ScalarMode::Exact => {
                    bail!("--tolerance applies only in float mode")
                }
                Some(e) if e.is_finite() && e >= 0.0 => e,
                Some(e) => bail!("invalid tolerance {e}"),
            };
            (
                Document::from_reports(vec![run_with(&m, mode, epsilon)]),
                json,
            )
        }
        Command::Fuzz {
            dim,
            trials,
            seed,
            corrupt,
            json,
        } => {
            let cfg = FuzzConfig {
                dim: dim as usize,
                trials,
                seed,
                corrupt,
            };
            (Document::from_reports(vec![fuzz(&cfg)]), json)
        }
        Command::Corpus { json } => (run_corpus(), json),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, json) = match document(cli.command) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    if let Err(e) = emit(&doc, json) {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_INVALID);
    }
    if doc.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
