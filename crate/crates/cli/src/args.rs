use chainfeas::instance::Task;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Minor-embedding and graph-coloring feasibility toolkit.
///
/// Every global flag can also be set through an environment variable with
/// the `CHAINFEAS_` prefix, e.g. `CHAINFEAS_SEED=7`.
#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "chainfeas", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Global {
    /// Master seed.
    #[arg(long, global = true, default_value_t = 0, env = "CHAINFEAS_SEED")]
    pub seed: u64,
    /// Worker threads for dataset and bench subcommands (0 = all cores).
    #[arg(long, global = true, default_value_t = 1, env = "CHAINFEAS_JOBS")]
    pub jobs: usize,
    /// Wall-clock limit in seconds. Results may then depend on machine speed.
    #[arg(long, global = true, env = "CHAINFEAS_TIME_LIMIT")]
    pub time_limit: Option<f64>,
    /// Iteration cap for Feasibility Jump, node cap for exact search.
    #[arg(long, global = true, env = "CHAINFEAS_ITERS")]
    pub iters: Option<u64>,
    /// Maximum chain size; overrides the instance file.
    #[arg(long, global = true, env = "CHAINFEAS_CHAIN_LIMIT")]
    pub chain_limit: Option<usize>,
    /// Number of colors; overrides the instance file.
    #[arg(long, global = true, env = "CHAINFEAS_K")]
    pub k: Option<usize>,
    /// Use the full parameter ranges instead of desk-scale ones.
    #[arg(long, global = true, env = "CHAINFEAS_FULL_SCALE")]
    pub full_scale: bool,
    /// Initial point for the local search.
    #[arg(long, global = true, env = "CHAINFEAS_WARM_START")]
    pub warm_start: Option<PathBuf>,
    /// Use only the first N candidates.
    #[arg(long, global = true, env = "CHAINFEAS_N_CANDIDATES")]
    pub n_candidates: Option<usize>,
    /// Write a replayable run manifest here.
    #[arg(long, global = true, env = "CHAINFEAS_WRITE_MANIFEST")]
    pub write_manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a graph (edge-list JSON) or, with --sample, a whole instance.
    GenGraph(GenGraphArgs),
    /// Zero-phase screening of an embedding instance.
    Screen { instance: PathBuf },
    /// Chain family statistics for a hardware graph or embedding instance.
    EnumerateChains {
        input: PathBuf,
        /// Abort enumeration beyond this many chains.
        #[arg(long, default_value_t = chainfeas::chains::DEFAULT_CHAIN_CAP)]
        cap: usize,
    },
    /// Encode an instance as an integer model and print its statistics.
    Encode {
        instance: PathBuf,
        /// Also write the plain-text model dump.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Solve an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Fj)]
        method: Method,
        /// Minimize total chain size (exact) or run chain shrinking (fj).
        #[arg(long)]
        optimize: bool,
    },
    /// Feasibility Jump from --warm-start, then chain shrinking.
    Repair { instance: PathBuf },
    /// Check a solution (JSON or answer text) against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Best-of-N selection over candidate answer files.
    Select {
        instance: PathBuf,
        #[arg(required = true)]
        candidates: Vec<PathBuf>,
    },
    /// Dataset production.
    #[command(subcommand)]
    Dataset(DatasetCommand),
    /// Feasibility Jump from zero versus from perturbed feasible colorings.
    BenchWarmstart(BenchArgs),
    /// Re-run the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Fj,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    Er,
    Ba,
    Ws,
    Regular,
    Sbm,
    Chimera,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GenGraphArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Er)]
    pub family: FamilyArg,
    /// Vertex count (er, ba, ws, regular).
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// Edge probability (er).
    #[arg(long)]
    pub p: Option<f64>,
    /// Expected average degree (er), used when --p is absent.
    #[arg(long, default_value_t = 4.0)]
    pub avg_degree: f64,
    /// Edges per new vertex (ba).
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Lattice degree (ws) or regular degree.
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// Rewiring probability (ws).
    #[arg(long, default_value_t = 0.1)]
    pub beta: f64,
    /// Block sizes (sbm), comma separated.
    #[arg(long, value_delimiter = ',', default_value = "10,10")]
    pub blocks: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.05)]
    pub p_out: f64,
    /// Chimera grid rows and columns and shore size.
    #[arg(long, default_value_t = 1)]
    pub rows: usize,
    #[arg(long, default_value_t = 1)]
    pub cols: usize,
    #[arg(long, default_value_t = 4)]
    pub shore: usize,
    /// Drop isolated vertices and relabel.
    #[arg(long)]
    pub drop_isolated: bool,
    /// Sample a complete instance of this task with the dataset sampler.
    #[arg(long)]
    pub sample: Option<Task>,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DatasetCommand {
    /// Sample, label and render records as JSON lines.
    Generate {
        #[arg(long)]
        task: Task,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Target fraction of satisfiable records.
        #[arg(long)]
        balance: Option<f64>,
        #[arg(long)]
        max_draws: Option<u64>,
        /// Output file; records go to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Label instance files, one JSON label per line.
    Label {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
    },
    /// Render an instance and its label as a record.
    Render { instance: PathBuf, label: PathBuf },
    /// Summary statistics of a record file.
    Stats { records: PathBuf },
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BenchArgs {
    /// Satisfiable instances in the benchmark set.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Fraction of vertices recolored in the warm start.
    #[arg(long, default_value_t = 0.1)]
    pub perturbation: f64,
    /// Per-instance rows as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}
