use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use shapesection_cli::{run, CliError, Command, RunConfig};

#[derive(Parser)]
#[command(name = "shapesection", version, about = "Canonical contour parameterization and shape classification")]
struct Cli {
    /// Run configuration (`key = value` lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory; overrides `out` in the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Dataset manifest (`path,class_id,class_name`); overrides `manifest`.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    /// Worker threads, 0 for one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Binarization level: pixels darker than this are foreground.
    #[arg(long, global = true)]
    threshold: Option<u8>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Trace the outer boundary of every image in the manifest.
    Extract,
    /// Normalize, resample, and write distances and the Dunn index.
    Pipeline,
    /// Dunn index over a grid of (lambda, sectors).
    Gridsearch,
    /// Train on the training split and report test accuracy.
    Classify,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    // Usage errors are validation failures (exit 1); 2 is reserved for
    // numerical failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(m) = &cli.manifest {
        cfg.manifest = Some(m.clone());
    }
    if let Some(t) = cli.threshold {
        cfg.threshold = t;
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| CliError::config("--threads", e.to_string()))?;
    let cmd = match cli.command {
        Cmd::Extract => Command::Extract,
        Cmd::Pipeline => Command::Pipeline,
        Cmd::Gridsearch => Command::Gridsearch,
        Cmd::Classify => Command::Classify,
    };
    run(cmd, &cfg, &mut std::io::stdout().lock())
}
