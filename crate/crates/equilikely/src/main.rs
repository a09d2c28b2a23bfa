use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{value_parser, Args, Parser, Subcommand};

use equilikely::experiment::{ExperimentConfig, ScheduleConfig};
use equilikely::fit::{fit_power_law_windowed, FitError};
use equilikely::io::{self, IoError};
use equilikely::plot::{freqs_script, loglog_script, PlotFigure};

#[derive(Parser)]
#[command(
    name = "equilikely",
    version,
    about = "Range statistics and power-law convergence of equally likely outcomes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Directory for data files
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,

    /// Seed for all simulated randomness; runs use substreams seed-wise
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Checkpoint density per decade of N
    #[arg(long, global = true, default_value_t = 20, value_parser = value_parser!(u32).range(1..))]
    points_per_decade: u32,

    /// Smallest checkpoint N
    #[arg(long, global = true, default_value_t = 10, value_parser = value_parser!(u64).range(1..))]
    n_min: u64,

    /// Smallest N entering the power-law fits
    #[arg(long, global = true, default_value_t = 100)]
    fit_min_n: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a fair-coin ensemble and fit the range power laws
    Coin {
        /// Tosses per run
        #[arg(long, default_value_t = 10_000, value_parser = value_parser!(u64).range(1..))]
        n_max: u64,
        /// Runs in the ensemble
        #[arg(long, default_value_t = 5, value_parser = value_parser!(u32).range(1..))]
        runs: u32,
    },
    /// Analyze the last digits of primes up to a limit
    Primes {
        /// Sieve upper bound (inclusive)
        #[arg(long, default_value_t = 100_000, value_parser = value_parser!(u64).range(2..))]
        limit: u64,
        /// Number base for the last digit
        #[arg(long, default_value_t = 10, value_parser = value_parser!(u64).range(2..))]
        base: u64,
    },
    /// Fit a power law to two named columns of a CSV file
    Fit {
        /// Input CSV with a header row
        #[arg(long)]
        input: PathBuf,
        /// Column with the trial counts N
        #[arg(long, default_value = "n")]
        x_column: String,
        /// Column with the values to fit
        #[arg(long, default_value = "mean_rel_range")]
        y_column: String,
    },
    /// Emit a gnuplot script for one figure panel
    Plot {
        /// Input CSV file(s): trajectories for freqs, summaries otherwise
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        /// Panel to render: freqs, range, or relrange
        #[arg(long)]
        figure: String,
        /// Path of the script to write
        #[arg(long)]
        out: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl From<IoError> for CliError {
    fn from(err: IoError) -> Self {
        match err {
            IoError::MissingColumn { .. }
            | IoError::BadField { .. }
            | IoError::NoHeader { .. } => CliError::Usage(err.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<FitError> for CliError {
    fn from(err: FitError) -> Self {
        CliError::Usage(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let global = &cli.global;
    match cli.command {
        Command::Coin { n_max, runs } => {
            let mut config = ExperimentConfig::coin(n_max, runs, global.seed);
            apply_globals(&mut config, global);
            run_experiment(&config, &global.out_dir)
        }
        Command::Primes { limit, base } => {
            let mut config = ExperimentConfig::primes(limit, base)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            apply_globals(&mut config, global);
            run_experiment(&config, &global.out_dir)
        }
        Command::Fit {
            input,
            x_column,
            y_column,
        } => {
            let points = io::read_xy_columns(&input, &x_column, &y_column)?;
            let (fit, window) = fit_power_law_windowed(&points, global.fit_min_n)?;
            let mut out = Vec::new();
            io::write_fit_json(&fit, window, &mut out)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            print!("{}", String::from_utf8_lossy(&out));
            Ok(())
        }
        Command::Plot { input, figure, out } => {
            let figure: PlotFigure = figure.parse().map_err(CliError::Usage)?;
            let inputs: Vec<&Path> = input.iter().map(PathBuf::as_path).collect();
            let script = match figure {
                PlotFigure::Freqs => {
                    let headers = io::read_headers(inputs[0])?;
                    let k = headers.iter().filter(|h| h.starts_with("f_")).count();
                    if k == 0 {
                        return Err(CliError::Usage(format!(
                            "{} has no f_* columns; freqs needs trajectory CSVs",
                            inputs[0].display()
                        )));
                    }
                    freqs_script(&inputs, k)
                }
                PlotFigure::Range | PlotFigure::RelRange => {
                    let y_column = match figure {
                        PlotFigure::Range => "mean_range",
                        _ => "mean_rel_range",
                    };
                    let points = io::read_xy_columns(inputs[0], "n", y_column)?;
                    let (fit, _) = fit_power_law_windowed(&points, global.fit_min_n)?;
                    loglog_script(&inputs, figure, &fit)
                }
            };
            std::fs::write(&out, script).map_err(|e| {
                CliError::Runtime(format!("cannot write {}: {e}", out.display()))
            })?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

fn apply_globals(config: &mut ExperimentConfig, global: &GlobalArgs) {
    config.schedule = ScheduleConfig {
        points_per_decade: global.points_per_decade,
        n_min: global.n_min,
    };
    config.fit_min_n = global.fit_min_n;
}

fn run_experiment(config: &ExperimentConfig, out_dir: &Path) -> Result<(), CliError> {
    let (manifest, report) = io::execute_to_dir(config, out_dir)?;
    for name in &manifest.output_paths {
        println!("wrote {}", out_dir.join(name).display());
    }
    println!("wrote {}", out_dir.join(io::MANIFEST_FILE).display());
    let last = report
        .summary
        .checkpoints
        .last()
        .expect("reports have at least one checkpoint");
    println!(
        "N = {} ({} run{}), final R = {}, R/N = {}",
        last.n,
        report.summary.num_runs,
        if report.summary.num_runs == 1 { "" } else { "s" },
        last.mean_range,
        last.mean_rel_range
    );
    println!(
        "alpha = {:.4} (se {:.4}), beta = {:.4} (se {:.4}), r^2 = {:.4}, {} points",
        report.alpha_fit.exponent,
        report.alpha_fit.exponent_se,
        report.beta_fit.exponent,
        report.beta_fit.exponent_se,
        report.beta_fit.r_squared,
        report.beta_fit.n_points
    );
    Ok(())
}
