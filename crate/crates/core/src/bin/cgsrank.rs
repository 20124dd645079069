// SPDX-License-Identifier: Apache-2.0

//! Command-line front end. Exit codes: 0 success, 2 usage error, 3 data
//! mismatch, 4 numeric failure, 1 anything else (I/O and the like).

use std::path::PathBuf;
use std::process::ExitCode;

use cgsrank::bench::{self, ExperimentConfig};
use cgsrank::metrics::{MiDenominator, TauVariant};
use cgsrank::Method;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cgsrank", version, about = "Rank influential nodes and benchmark the rankings")]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

/// Flags override the values read from `--config`.
#[derive(Args)]
struct Overrides {
    /// JSON experiment configuration; any field may be omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Edge list to use instead of a generated BA graph.
    #[arg(long, global = true)]
    graph: Option<PathBuf>,
    #[arg(long, global = true)]
    ba_n: Option<usize>,
    #[arg(long, global = true)]
    ba_m: Option<usize>,
    /// Absolute infection probability (overrides --mu-multiplier).
    #[arg(long, global = true)]
    mu: Option<f64>,
    /// Infection probability as a multiple of the epidemic threshold.
    #[arg(long, global = true)]
    mu_multiplier: Option<f64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true)]
    learning_rate: Option<f64>,
    #[arg(long, global = true)]
    epochs: Option<usize>,
    /// Comma-separated: dc,bc,hi,kcore,vc,mdd,nd,cgs
    #[arg(long, global = true, value_delimiter = ',')]
    methods: Option<Vec<Method>>,
    #[arg(long, global = true, value_delimiter = ',')]
    k_grid: Option<Vec<usize>>,
    #[arg(long, global = true, value_delimiter = ',')]
    mu_grid: Option<Vec<f64>>,
    #[arg(long, global = true)]
    mdd_lambda: Option<f64>,
    /// Use tie-corrected Kendall tau.
    #[arg(long, global = true)]
    tau_b: bool,
    /// Divide the monotonicity index by the number of distinct ranks.
    #[arg(long, global = true)]
    mi_unique_ranks: bool,
    #[arg(long, global = true)]
    histogram_bins: Option<usize>,
    #[arg(long, global = true)]
    repeats: Option<usize>,
    #[arg(long = "out", global = true)]
    output_dir: Option<PathBuf>,
    /// Worker threads for SIR and betweenness (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Write a BA edge list and its statistics.
    Generate,
    /// Simulate SIR from every node and write influence labels.
    Label,
    /// Train the graph regressor on a labelled graph.
    Train {
        #[arg(long)]
        labels: PathBuf,
    },
    /// Score every node with the configured methods.
    Rank {
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Compare scores with labels: tau, top-k Jaccard, monotonicity.
    Evaluate {
        #[arg(long)]
        scores: PathBuf,
        #[arg(long)]
        labels: PathBuf,
    },
    /// Tau of each method across infection rates.
    SweepMu {
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Median-of-N wall time of each method on each graph.
    BenchTime {
        #[arg(long)]
        weights: Option<PathBuf>,
        graphs: Vec<PathBuf>,
    },
}

impl Overrides {
    fn apply(self, mut cfg: ExperimentConfig) -> ExperimentConfig {
        macro_rules! set {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = self.$field { $target = v; })*
            };
        }
        set! {
            seed => cfg.seed,
            ba_n => cfg.ba.n,
            ba_m => cfg.ba.m_attach,
            mu_multiplier => cfg.mu_multiplier,
            beta => cfg.beta,
            trials => cfg.trials,
            learning_rate => cfg.learning_rate,
            epochs => cfg.epochs,
            methods => cfg.methods,
            k_grid => cfg.k_grid,
            mu_grid => cfg.mu_multipliers,
            mdd_lambda => cfg.mdd_lambda,
            histogram_bins => cfg.histogram_bins,
            repeats => cfg.timing_repeats,
            output_dir => cfg.output_dir,
        }
        if self.graph.is_some() {
            cfg.graph = self.graph;
        }
        if self.mu.is_some() {
            cfg.mu = self.mu;
        }
        if self.tau_b {
            cfg.tau_variant = TauVariant::B;
        }
        if self.mi_unique_ranks {
            cfg.mi_denominator = MiDenominator::UniqueRanks;
        }
        cfg
    }
}

fn run(cli: Cli) -> cgsrank::Result<()> {
    let base = match &cli.overrides.config {
        Some(path) => ExperimentConfig::from_json_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(threads) = cli.overrides.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| cgsrank::Error::InvalidArgument(e.to_string()))?;
    }
    let cfg = cli.overrides.apply(base);
    match cli.command {
        Command::Generate => {
            let out = bench::cmd_generate(&cfg)?;
            println!("{}", out.edges.display());
        }
        Command::Label => println!("{}", bench::cmd_label(&cfg)?.display()),
        Command::Train { labels } => println!("{}", bench::cmd_train(&cfg, &labels)?.display()),
        Command::Rank { weights } => println!("{}", bench::cmd_rank(&cfg, weights.as_deref())?.display()),
        Command::Evaluate { scores, labels } => {
            for r in bench::cmd_evaluate(&cfg, &scores, &labels)? {
                println!("{:<8} tau {:+.4}  mi {:.4}", r.method, r.kendall_tau, r.monotonicity);
            }
        }
        Command::SweepMu { weights } => println!("{}", bench::cmd_sweep_mu(&cfg, weights.as_deref())?.display()),
        Command::BenchTime { weights, graphs } => {
            println!("{}", bench::cmd_bench_time(&cfg, &graphs, weights.as_deref())?.display())
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
