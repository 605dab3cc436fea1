//! Configuration-driven frontend to `casimir-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

pub use commands::{execute, Report};
pub use config::{Command, Format, RunConfig};
pub use error::CliError;

/// Runs `cfg` on a dedicated pool of `threads` workers (all cores when
/// `None`) and renders the result.
pub fn run_to_string(cfg: &RunConfig, threads: Option<usize>, format: Format) -> Result<String, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.or(cfg.threads) {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    let report = pool.install(|| execute(cfg))?;
    Ok(output::render(&report, format))
}
