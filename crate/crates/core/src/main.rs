use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::error;

use helium_mixer::error::MixerError;
use helium_mixer::parallel::Execution;
use helium_mixer::runner::{compare_frames, run_scenario, run_sweep, validate_config, RunOptions};
use helium_mixer::scenario::{builtin, load, BUILTIN_NAMES};
use helium_mixer::spectrum::Window;

#[derive(Parser)]
#[command(
    name = "helium-mixer",
    version,
    about = "THz/GHz frequency mixing in surface-state electrons on helium"
)]
struct Cli {
    /// Run independent jobs one after another.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario or a TOML scenario file.
    Run {
        /// Scenario names or paths; more than one requires --sweep.
        #[arg(required = true)]
        scenarios: Vec<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Integrate with a constant step for byte-reproducible output.
        #[arg(long)]
        fixed_step: bool,
        #[arg(long)]
        window: Option<Window>,
        /// Run every listed scenario concurrently into `<out>/<name>`.
        #[arg(long)]
        sweep: bool,
    },
    /// Print derived quantities and warnings without integrating.
    Validate { scenario: String },
    /// Integrate in all three frames and report their differences.
    CompareFrames { scenario: String },
    /// List built-in scenarios.
    ListScenarios,
}

fn exit_code(e: &MixerError) -> u8 {
    match e {
        MixerError::Integration { .. } | MixerError::Numerical(_) => 3,
        MixerError::Io(_) | MixerError::Json(_) => 1,
        _ => 2,
    }
}

fn execute(cli: Cli) -> Result<(), MixerError> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Run {
            scenarios,
            out,
            fixed_step,
            window,
            sweep,
        } => {
            let options = RunOptions {
                out_dir: out,
                fixed_step: fixed_step.then_some(true),
                window,
                execution,
            };
            if sweep {
                let configs = scenarios
                    .iter()
                    .map(|s| load(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut first_error = None;
                for (cfg, result) in configs.iter().zip(run_sweep(&configs, &options)) {
                    match result {
                        Ok(m) => println!(
                            "{}: {} files, hash {}",
                            cfg.name,
                            m.files.len(),
                            m.config_hash
                        ),
                        Err(e) => {
                            error!("{}: {e}", cfg.name);
                            first_error.get_or_insert(e);
                        }
                    }
                }
                return first_error.map_or(Ok(()), Err);
            }
            if scenarios.len() > 1 {
                return Err(MixerError::Config(
                    "several scenarios given; add --sweep".into(),
                ));
            }
            let manifest = run_scenario(&load(&scenarios[0])?, &options)?;
            for w in &manifest.warnings {
                eprintln!("warning: {w}");
            }
            println!("{}", serde_json::to_string_pretty(&manifest)?);
        }
        Command::Validate { scenario } => {
            let report = validate_config(&load(&scenario)?)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::CompareFrames { scenario } => {
            let cmp = compare_frames(&load(&scenario)?, execution)?;
            println!("{}", serde_json::to_string_pretty(&cmp)?);
        }
        Command::ListScenarios => {
            for name in BUILTIN_NAMES {
                println!("{name:<16} {}", builtin(name)?.description);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
