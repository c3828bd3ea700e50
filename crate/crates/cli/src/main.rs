//! `mln`: experiment driver for two-layer centrality analysis.
//!
//! The pipeline the subcommands walk through: `generate` synthetic dataset
//! directories, `analyze` each layer into summary artifacts, `compose`
//! summaries into combined-network estimates, compute the exact
//! `ground-truth` for reference, or do all of it at once with `run` and
//! aggregate the resulting CSVs with `report`.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use mln_core::{AnalysisKind, MlnError};

mod commands;
mod methods;
mod report;
mod run;
mod table;

#[derive(Parser)]
#[command(name = "mln", version, about = "Decoupled centrality analysis for two-layer networks")]
struct Cli {
    /// Base seed for seeded choices (fraction retention subsets)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Worker threads; 0 uses one per available core
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Output path: directory for generate/analyze/report, file for the rest
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// What run/report print to stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Degree,
    Closeness,
}

impl From<Kind> for AnalysisKind {
    fn from(k: Kind) -> AnalysisKind {
        match k {
            Kind::Degree => AnalysisKind::Degree,
            Kind::Closeness => AnalysisKind::Closeness,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Retain {
    None,
    HubsOnly,
    Fraction,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Materialize every dataset in a manifest as edge lists plus metadata
    Generate {
        /// Suite manifest: JSON with a seed and dataset specs
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Analyze each layer of a dataset and write summary artifacts
    Analyze {
        /// Dataset directory (L1.edges, L2.edges, meta.json)
        dataset: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        /// How much adjacency the degree summaries keep for composition
        #[arg(long, value_enum, default_value_t = Retain::None)]
        retain: Retain,
        /// Retained fraction of vertices when --retain fraction
        #[arg(long)]
        fraction: Option<f64>,
    },
    /// Combine two summary artifacts with one composition method
    Compose {
        /// First layer's summary artifact
        x: PathBuf,
        /// Second layer's summary artifact
        y: PathBuf,
        /// Method name (naive, dc-a1, dc-a2, dc-a2-info:<f>, dc-p1, dc-p2, cc1, cc2)
        #[arg(long)]
        method: String,
        /// cc2 only: keep the k best vertices instead of the above-average set
        #[arg(long)]
        top_k: Option<usize>,
    },
    /// Exact hub or central-vertex set of the aggregated network
    GroundTruth {
        /// Dataset directory (L1.edges, L2.edges, meta.json)
        dataset: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Full evaluation: analysis, compositions, ground truth, metrics
    Run {
        /// Dataset directories, or parents holding several of them
        #[arg(required = true)]
        datasets: Vec<PathBuf>,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Comma-separated method names, e.g. naive,dc-a1,dc-a2-info:0.5
        #[arg(long, required = true, value_delimiter = ',')]
        methods: Vec<String>,
        /// Fractions that expand a bare dc-a2-info into one method per value
        #[arg(long, value_delimiter = ',')]
        info_fraction: Vec<f64>,
        /// cc2 only: keep the k best vertices instead of the above-average set
        #[arg(long)]
        top_k: Option<usize>,
        /// Skip ground truth (and accuracy columns) when a dataset has more vertices than this
        #[arg(long)]
        gt_cap: Option<usize>,
    },
    /// Aggregate result CSVs into mean accuracy, gains, and plot series
    Report {
        /// Result CSVs written by `run`; all must share the schema
        #[arg(required = true)]
        csvs: Vec<PathBuf>,
        /// Method the gains are measured against
        #[arg(long, default_value = "naive")]
        baseline: String,
    },
}

/// Failures split by exit code: bad invocations exit 1, bad data exits 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl From<MlnError> for CliError {
    fn from(e: MlnError) -> CliError {
        CliError::Data(e.to_string())
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if informational { 0 } else { 1 };
        }
    };

    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MLN_LOG", "warn"))
        .format_timestamp(None)
        .init();

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: building the thread pool: {e}");
            return 2;
        }
    };

    match pool.install(|| dispatch(&cli)) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            1
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Generate { manifest } => {
            let out = cli
                .out
                .as_deref()
                .ok_or_else(|| CliError::Usage("generate needs --out <dir>".into()))?;
            commands::cmd_generate(manifest, out)
        }
        Command::Analyze {
            dataset,
            kind,
            retain,
            fraction,
        } => commands::cmd_analyze(
            dataset,
            (*kind).into(),
            *retain,
            *fraction,
            cli.seed,
            cli.out.as_deref(),
        ),
        Command::Compose { x, y, method, top_k } => {
            commands::cmd_compose(x, y, method, *top_k, cli.out.as_deref())
        }
        Command::GroundTruth { dataset, kind } => {
            commands::cmd_ground_truth(dataset, (*kind).into(), cli.out.as_deref())
        }
        Command::Run {
            datasets,
            kind,
            methods,
            info_fraction,
            top_k,
            gt_cap,
        } => {
            let kind = (*kind).into();
            let specs = methods::parse_methods(kind, methods, info_fraction, *top_k)?;
            let out = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("results.csv"));
            let cfg = run::RunConfig {
                kind,
                methods: &specs,
                gt_cap: *gt_cap,
                seed: cli.seed,
            };
            run::cmd_run(datasets, &cfg, &out, cli.format == Format::Json)
        }
        Command::Report { csvs, baseline } => {
            let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("report"));
            report::cmd_report(csvs, baseline, &out, cli.format == Format::Json)
        }
    }
}
