//! Command-line front end: JSON scenarios in, CSV/JSON tables out.

use clap::{Args, Parser, Subcommand, ValueEnum};
use dyncp::error::Result;
use dyncp::scenario::{
    preset, preset_names, run_single, run_sweep, single_row_table, validate, write_csv,
    write_json, ScenarioConfig, SweepTable,
};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "dyncp",
    version,
    about = "Rydberg-atom excitation by a vibrating mirror",
    long_about = "Computes dynamical atom-surface excitation probabilities, gas-cloud \
                  excited counts, and model-validity reports from JSON scenario files."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Table format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ConfigArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario at its base parameter point.
    Single {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate every point of the scenario's sweep grid.
    Sweep {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Worker threads (default: one per core).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Grade the scenario's base point against the model's validity conditions.
    Validate {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Inspect and run the built-in scenarios.
    Preset {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// List the built-in scenario names.
    List,
    /// Run a built-in scenario like `single`.
    Run {
        name: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn emit(table: &SweepTable, out: &OutputArgs) -> Result<()> {
    let write = |w: &mut dyn std::io::Write| match out.format {
        Format::Csv => write_csv(table, w),
        Format::Json => write_json(table, w),
    };
    match &out.output {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            write(&mut file)
        }
        None => write(&mut std::io::stdout().lock()),
    }
}

fn warn_on_rough_profiles(cfg: &ScenarioConfig) {
    use dyncp::scenario::ProfileSpec;
    if let Some(gas) = &cfg.gas {
        if let ProfileSpec::Tabulated(tab) = &gas.profile {
            let dev = tab.raw_integral_deviation();
            if dev > 0.01 {
                eprintln!(
                    "warning: tabulated gas profile integrated to {:.3} before renormalization \
                     (deviation {:.1}%); check its units and sampling",
                    1.0 + dev,
                    dev * 100.0
                );
            }
        }
    }
}

fn run_single_to_table(cfg: &ScenarioConfig) -> Result<SweepTable> {
    let row = run_single(cfg)?;
    Ok(single_row_table(cfg, row))
}

fn parse_cli() -> Cli {
    // exit code 2 is reserved for numerical non-convergence; usage errors
    // report as ordinary (1) failures
    Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 1 } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    })
}

fn real_main() -> Result<()> {
    let cli = parse_cli();
    match cli.command {
        Command::Single { config, output } => {
            let cfg = ScenarioConfig::from_path(&config.config)?;
            warn_on_rough_profiles(&cfg);
            emit(&run_single_to_table(&cfg)?, &output)
        }
        Command::Sweep {
            config,
            output,
            jobs,
        } => {
            let cfg = ScenarioConfig::from_path(&config.config)?;
            warn_on_rough_profiles(&cfg);
            emit(&run_sweep(&cfg, jobs)?, &output)
        }
        Command::Validate { config, output } => {
            let cfg = ScenarioConfig::from_path(&config.config)?;
            warn_on_rough_profiles(&cfg);
            let report = validate(&cfg)?;
            match output.format {
                Format::Json => {
                    let text = serde_json::to_string_pretty(&report)?;
                    match &output.output {
                        Some(path) => std::fs::write(path, text + "\n")?,
                        None => println!("{text}"),
                    }
                }
                Format::Csv => {
                    let mut lines = vec![
                        "check,ratio,flag".to_string(),
                        format!(
                            "near_zone,{:.16e},{}",
                            report.near_zone.ratio, report.near_zone.flag
                        ),
                        format!(
                            "amplitude,{:.16e},{}",
                            report.amplitude.ratio, report.amplitude.flag
                        ),
                        format!(
                            "perturbative,{:.16e},{}",
                            report.perturbative.ratio, report.perturbative.flag
                        ),
                    ];
                    if let Some(h) = report.hierarchy {
                        lines.push(format!("hierarchy,{:.16e},{}", h.ratio, h.flag));
                    }
                    if let Some(p) = report.photon {
                        lines.push(format!("photon_contrast,{:.16e},", p.contrast));
                    }
                    lines.push(format!("overall,,{}", report.overall));
                    let text = lines.join("\n") + "\n";
                    match &output.output {
                        Some(path) => std::fs::write(path, text)?,
                        None => print!("{text}"),
                    }
                }
            }
            Ok(())
        }
        Command::Preset { action } => match action {
            PresetAction::List => {
                for name in preset_names() {
                    println!("{name}");
                }
                Ok(())
            }
            PresetAction::Run { name, output } => {
                let cfg = preset(&name)?;
                emit(&run_single_to_table(&cfg)?, &output)
            }
        },
    }
}

fn main() {
    if let Err(e) = real_main() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
