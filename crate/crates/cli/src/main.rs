use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use prd_cli::commands;
use prd_cli::experiment::ModeExperimentConfig;
use prd_cli::{CliError, CliResult};
use prd_core::cluster::{
    ClusteringConfig, DEFAULT_BATCH_SIZE, DEFAULT_CLUSTERS, DEFAULT_ITERATIONS, DEFAULT_RUNS,
};
use prd_core::{DEFAULT_BETA_WEIGHT, DEFAULT_RESOLUTION};

#[derive(Parser)]
#[command(
    name = "prd",
    version,
    about = "Precision and recall for distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// PRD curve between two feature files via clustering.
    Compute {
        /// Reference (real) feature file.
        real: PathBuf,
        /// Model (generated) feature file.
        generated: PathBuf,
        #[command(flatten)]
        clustering: ClusterArgs,
        /// Extra β weights for the F_β table.
        #[arg(long = "fbeta", value_delimiter = ',')]
        fbeta: Vec<f64>,
        /// Output stem; `.json` and `.csv` are written.
        #[arg(long)]
        out: PathBuf,
    },
    /// PRD curve between two explicit histograms.
    Hist {
        /// Reference histogram JSON.
        p: PathBuf,
        /// Model histogram JSON.
        q: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        m: usize,
        /// Rescale histograms that do not sum to one.
        #[arg(long)]
        normalize: bool,
        #[arg(long = "fbeta", value_delimiter = ',')]
        fbeta: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mode dropping / inventing sweep over a labeled feature file.
    ModeExperiment {
        /// Labeled feature file.
        labeled: PathBuf,
        #[arg(long, default_value_t = 5)]
        ref_classes: usize,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        /// Class ids in sweep order (default: 0, 1, 2, …).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        classes: Option<Vec<i32>>,
        #[command(flatten)]
        clustering: ClusterArgs,
        #[arg(long = "fbeta", value_delimiter = ',')]
        fbeta: Vec<f64>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Max F_β and F_1/β per report.
    Fbeta {
        #[arg(required = true)]
        reports: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BETA_WEIGHT)]
        beta: f64,
        /// CSV output.
        #[arg(long)]
        out: PathBuf,
        /// Optional SVG scatter.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// SVG rendering of a report's PRD region.
    Plot {
        report: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ClusterArgs {
    #[arg(long, default_value_t = DEFAULT_CLUSTERS)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_RUNS)]
    runs: usize,
    #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
    m: usize,
    #[arg(long, env = "PRD_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BATCH_SIZE)]
    batch_size: usize,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,
}

impl From<ClusterArgs> for ClusteringConfig {
    fn from(a: ClusterArgs) -> Self {
        ClusteringConfig {
            k: a.k,
            runs: a.runs,
            resolution: a.m,
            batch_size: a.batch_size,
            iterations: a.iterations,
            seed: a.seed,
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Compute {
            real,
            generated,
            clustering,
            fbeta,
            out,
        } => {
            let w = commands::cmd_compute(&real, &generated, &clustering.into(), &fbeta, &out)?;
            println!("{}\n{}", w.json.display(), w.csv.display());
        }
        Command::Hist {
            p,
            q,
            m,
            normalize,
            fbeta,
            out,
        } => {
            let w = commands::cmd_hist(&p, &q, m, normalize, &fbeta, &out)?;
            println!("{}\n{}", w.json.display(), w.csv.display());
        }
        Command::ModeExperiment {
            labeled,
            ref_classes,
            steps,
            classes,
            clustering,
            fbeta,
            out,
        } => {
            let config = ModeExperimentConfig {
                ref_classes,
                steps,
                class_order: classes,
                clustering: clustering.into(),
            };
            let reports = commands::cmd_mode_experiment(&labeled, &config, &fbeta, &out)?;
            print!("{}", commands::summary_csv(&reports));
        }
        Command::Fbeta {
            reports,
            beta,
            out,
            plot,
        } => {
            let rows = commands::cmd_fbeta(&reports, beta, &out, plot.as_deref())?;
            print!("{}", commands::fbeta_csv(&rows));
        }
        Command::Plot { report, out } => {
            commands::cmd_plot(&report, &out)?;
            println!("{}", out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let msg = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            eprintln!("{}", CliError::Parse(msg).report_line());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.report_line());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
