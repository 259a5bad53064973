use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use darboux_cli::{
    run, to_canonical_json, to_csv, CliError, OutputFormat, RunConfig, DIM_CAP_ENV, EXIT_OK,
};

#[derive(Parser)]
#[command(
    name = "darboux",
    version,
    about = "Complex structures on phase space: moduli, observer disagreement, Planck cone",
    after_help = "Exit codes: 0 success, 2 configuration error, 3 computation-cap rejection, \
                  4 input parse error, 5 i/o error.\n\
                  Environment: DARBOUX_DIM_CAP overrides the truncated-Fock dimension cap \
                  (default 4096)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate moduli-space dimensions for n = 1..=N
    Moduli {
        /// Largest number of degrees of freedom to tabulate (range is 1..=N, cap 5)
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Report format
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Sample rotations and quantify how their observers disagree about quanta
    Observers {
        /// Number of modes
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Base seed; sample i uses a stream derived from (seed, i)
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled rotations
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Per-mode Fock occupation cutoff
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
        /// Tolerance for boolean predicates
        #[arg(long, default_value_t = darboux::DEFAULT_TOL)]
        tol: f64,
        /// Residual below which an observer counts as possessing a vacuum
        #[arg(long, default_value_t = darboux::DEFAULT_VACUUM_THRESHOLD)]
        vacuum_threshold: f64,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Report format
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
    /// Classify a path of points in R^{2n}⊕R^{2n} against the Planck cone
    Cone {
        /// Path file: one point per line as 4n whitespace-separated decimals
        /// (quantum block first), or a JSON array of flat 4n-value arrays
        #[arg(long)]
        input: PathBuf,
        /// Half-width of the on-cone band
        #[arg(long, default_value_t = darboux::DEFAULT_TOL)]
        tol: f64,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Report format
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

fn config_from_cli(cli: Cli) -> Result<RunConfig, CliError> {
    let mut config = RunConfig::default();
    if let Ok(cap) = std::env::var(DIM_CAP_ENV) {
        config.dim_cap = cap.parse().map_err(|_| {
            CliError::Config(format!("{DIM_CAP_ENV} must be a positive integer, got {cap:?}"))
        })?;
    }
    match cli.command {
        Command::Moduli { n, output, format } => {
            config.command = "moduli".into();
            config.n = n;
            config.output = output;
            config.format = format.into();
        }
        Command::Observers {
            n,
            seed,
            samples,
            cutoff,
            tol,
            vacuum_threshold,
            output,
            format,
        } => {
            config.command = "observers".into();
            config.n = n;
            config.seed = seed;
            config.samples = samples;
            config.cutoff = cutoff;
            config.tol = tol;
            config.vacuum_threshold = vacuum_threshold;
            config.output = output;
            config.format = format.into();
        }
        Command::Cone { input, tol, output, format } => {
            config.command = "cone".into();
            config.input = Some(input);
            config.tol = tol;
            config.output = output;
            config.format = format.into();
        }
    }
    Ok(config)
}

fn execute() -> Result<(), CliError> {
    let cli = Cli::parse();
    let config = config_from_cli(cli)?;
    let report = run(&config)?;
    let rendered = match config.format {
        OutputFormat::Json => {
            let mut text = to_canonical_json(&report);
            text.push('\n');
            text
        }
        OutputFormat::Csv => to_csv(&report),
    };
    match &config.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

fn main() {
    match execute() {
        Ok(()) => std::process::exit(EXIT_OK),
        Err(e) => {
            eprintln!("darboux: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
