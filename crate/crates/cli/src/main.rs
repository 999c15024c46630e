use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gatecraft::commands;
use gatecraft::config::ExperimentConfig;
use gatecraft::CliError;

/// Batch simulations of parametric two-qubit gates on voltage-tunable qubits.
#[derive(Parser)]
#[command(name = "gatecraft", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to the JSON experiment config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for parallel evaluations.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output directory (falls back to GATECRAFT_OUT, then the config's
    /// `output` field, then the current directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Static spectra and the ZZ rate.
    Spectrum,
    /// Optimize the configured gate and dump metrics plus population traces.
    Optimize,
    /// Re-optimize the gate across a J_C sweep.
    Sweep,
    /// Scan the gate error under one-axis parameter perturbations.
    Sensitivity,
    /// Relaxation-time threshold scan of the optimized gate.
    Lindblad,
    /// Perturbative vs simulated conditional-phase rates.
    ZzEstimate,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Validation(format!("--jobs: {e}")))?;
    }
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Validation("--config is required".into()))?;
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| CliError::Io(format!("{}: {e}", config_path.display())))?;
    let config = ExperimentConfig::from_json(&text)?;

    let out_dir = cli
        .out
        .clone()
        .or_else(|| std::env::var_os("GATECRAFT_OUT").map(PathBuf::from))
        .or_else(|| config.output.clone().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));

    match cli.command {
        Command::Spectrum => commands::cmd_spectrum(&config, &out_dir),
        Command::Optimize => commands::cmd_optimize(&config, &out_dir),
        Command::Sweep => commands::cmd_sweep(&config, &out_dir),
        Command::Sensitivity => commands::cmd_sensitivity(&config, &out_dir),
        Command::Lindblad => commands::cmd_lindblad(&config, &out_dir),
        Command::ZzEstimate => commands::cmd_zz_estimate(&config, &out_dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
