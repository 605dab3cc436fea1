use std::path::PathBuf;
use std::process::ExitCode;

use casimir_lab::config::Format;
use casimir_lab::presets::{preset, PRESET_NAMES};
use casimir_lab::{run_to_string, CliError, Command, RunConfig};
use clap::Parser;

/// Lifshitz-theory Casimir free energies, entropies and Nernst checks.
#[derive(Debug, Parser)]
#[command(name = "casimir-lab", version)]
struct Args {
    /// TOML run configuration.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in configuration (see --list-presets).
    #[arg(long)]
    preset: Option<String>,
    /// Override the configured command.
    #[arg(long)]
    command: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads.
    #[arg(long, env = "CASIMIR_LAB_THREADS")]
    threads: Option<usize>,
    /// Relative tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    list_presets: bool,
    /// Print the resolved configuration as TOML and exit.
    #[arg(long)]
    print_config: bool,
}

fn resolve(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => RunConfig::from_toml(&std::fs::read_to_string(path)?)?,
        (None, Some(name)) => preset(name)?,
        (None, None) => return Err(CliError::Config("one of --config or --preset is required".into())),
    };
    if let Some(c) = &args.command {
        cfg.command = c.parse::<Command>()?;
    }
    if let Some(tol) = args.tol {
        cfg.tolerances.rel_tol = tol;
    }
    if let Some(n) = args.threads {
        cfg.threads = Some(n);
    }
    if let Some(p) = &args.output {
        cfg.output.path = Some(p.clone());
    }
    if let Some(f) = args.format {
        cfg.output.format = f;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(args: &Args) -> Result<(), CliError> {
    if args.list_presets {
        for name in PRESET_NAMES {
            println!("{name}");
        }
        return Ok(());
    }
    let cfg = resolve(args)?;
    if args.print_config {
        print!("{}", cfg.to_toml());
        return Ok(());
    }
    let text = run_to_string(&cfg, cfg.threads, cfg.output.format)?;
    match &cfg.output.path {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("casimir-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
