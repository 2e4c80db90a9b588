use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use cho_cli::config::{OutputFormat, SolverKind, SystemKind, ToleranceProfile};
use cho_cli::{emit_table, run_with_threads, threads_from_env, ConfigFile, Overrides};

/// Eigenstates and information measures of confined harmonic oscillators.
///
/// Reads an optional TOML run description and applies the flags on top of
/// it. Worker count comes from CHO_TOOLKIT_THREADS (default: all cores).
#[derive(Debug, Parser)]
#[command(name = "cho", version)]
struct Args {
    /// TOML run description.
    config: Option<PathBuf>,

    /// scho, acho, cho3d, pisb or free.
    #[arg(long)]
    system: Option<SystemKind>,

    /// exact, itp, gps, vardiag or auto.
    #[arg(long)]
    solver: Option<SolverKind>,

    /// Sweep axis as axis=v1,v2,... (omega, d_m, x_c, r_c); repeatable.
    #[arg(long, value_name = "AXIS=VALUES")]
    sweep: Vec<String>,

    /// State labels as key=v1,v2,... (n, or n_r, l, m); ranges like 0..4 are inclusive.
    #[arg(long, value_name = "LABEL=VALUES")]
    states: Vec<String>,

    /// Comma-separated: shannon, renyi, onicescu, fisher, complexity, virial; or none.
    #[arg(long)]
    measures: Option<String>,

    /// Output file; "-" or absent writes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// csv or json.
    #[arg(long)]
    format: Option<OutputFormat>,

    /// fast or paper.
    #[arg(long = "tolerance-profile")]
    tolerance_profile: Option<ToleranceProfile>,
}

fn main() -> Result<ExitCode> {
    let args = Args::parse();
    let file = match &args.config {
        Some(path) => {
            let base = path.parent().map(PathBuf::from).unwrap_or_default();
            ConfigFile::load(path)?.resolve_paths(&base)
        }
        None => ConfigFile::default(),
    };
    let overrides = Overrides {
        system: args.system,
        solver: args.solver,
        sweep: args.sweep,
        states: args.states,
        measures: args.measures,
        out: args.out,
        format: args.format,
        tolerance_profile: args.tolerance_profile,
    };
    let spec = file.apply(&overrides)?.into_spec()?;
    let outcome = run_with_threads(&spec, threads_from_env()?)?;

    match &spec.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            emit_table(&outcome.table, spec.format, &mut w)?;
            w.flush().with_context(|| format!("writing {}", path.display()))?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            emit_table(&outcome.table, spec.format, &mut w)?;
        }
    }
    if outcome.failed_rows > 0 {
        eprintln!("{} of {} rows failed; see the error column", outcome.failed_rows, outcome.table.rows.len());
    }
    Ok(if outcome.all_failed() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}
