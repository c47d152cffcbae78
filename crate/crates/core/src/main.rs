use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sturmlab::discretize::discretize;
use sturmlab::harness::{
    self, export, ExperimentConfig, HarnessError, OutputFormat,
};
use sturmlab::problem::{builtin_problem, BUILTIN_PROBLEMS};

#[derive(Parser)]
#[command(
    name = "sturmlab",
    version,
    about = "Galerkin laboratory for perturbed Sturm-Liouville spectra"
)]
struct Cli {
    /// Override the seed in the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute an experiment config; write the report, or print JSON to
    /// stdout when no output directory is configured.
    Run {
        /// Path to a JSON experiment config.
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides output.path from the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; overrides output.format from the config.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// List every runnable experiment name, one per line.
    ListProblems,
    /// Assemble the configured problem and write M, K0, D as matrix
    /// archives (m.json, k0.json, d.json).
    DumpMatrices {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<ExperimentConfig, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Io { path: path.to_path_buf(), source: e })?;
    let mut cfg: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn cmd_run(
    config: &Path,
    out: Option<PathBuf>,
    format: Option<FormatArg>,
    seed: Option<u64>,
) -> Result<(), HarnessError> {
    let cfg = load_config(config, seed)?;
    let report = harness::run(&cfg)?;
    for (stage, secs) in &report.timings {
        eprintln!("{stage}: {secs:.3} s");
    }

    let out_dir = out.or_else(|| cfg.output.as_ref().map(|o| PathBuf::from(&o.path)));
    let fmt: OutputFormat = format
        .map(Into::into)
        .or_else(|| cfg.output.as_ref().map(|o| o.format))
        .unwrap_or_default();
    match out_dir {
        Some(dir) => {
            for path in export::export(&report, fmt, &dir)? {
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            if fmt == OutputFormat::Csv {
                return Err(HarnessError::Config(
                    "csv output needs an output directory (--out or output.path)".into(),
                ));
            }
            let bytes = export::report_json_bytes(&report)?;
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| HarnessError::Io { path: PathBuf::from("<stdout>"), source: e })?;
        }
    }
    Ok(())
}

fn cmd_dump_matrices(config: &Path, out: &Path, seed: Option<u64>) -> Result<(), HarnessError> {
    let cfg = load_config(config, seed)?;
    if !BUILTIN_PROBLEMS.contains(&cfg.experiment.as_str()) {
        return Err(HarnessError::Config(format!(
            "dump-matrices needs a builtin problem, got '{}'",
            cfg.experiment
        )));
    }
    let resolution = cfg
        .resolution
        .ok_or_else(|| HarnessError::Config("'resolution' is required".into()))?;
    let spec = builtin_problem(&cfg.experiment, &cfg.complex_params())
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let sys = discretize(&spec, resolution, cfg.degree)
        .map_err(|e| HarnessError::Config(format!("discretize: {e}")))?;
    std::fs::create_dir_all(out)
        .map_err(|e| HarnessError::Io { path: out.to_path_buf(), source: e })?;
    for (name, matrix) in [("m.json", &sys.m), ("k0.json", &sys.k0), ("d.json", &sys.d)] {
        let path = out.join(name);
        export::write_matrix_archive(&path, matrix)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, out, format } => {
            cmd_run(config, out.clone(), *format, cli.seed)
        }
        Command::ListProblems => {
            for name in harness::registry() {
                println!("{name}");
            }
            Ok(())
        }
        Command::DumpMatrices { config, out } => cmd_dump_matrices(config, out, cli.seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
