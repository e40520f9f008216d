use crate::args::{Cli, Command, DatasetCommand};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

/// Everything needed to repeat a run: the fully resolved configuration
/// (defaults and environment overrides materialized) plus the files it read
/// and wrote.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub seed: u64,
    pub config: Cli,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(cli: &Cli) -> Self {
        let mut config = cli.clone();
        config.global.write_manifest = None;
        let (inputs, outputs) = io_paths(cli);
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand_name(&cli.command).to_string(),
            seed: cli.global.seed,
            config,
            inputs,
            outputs,
        }
    }
}

pub fn subcommand_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::GenGraph(_) => "gen-graph",
        Command::Screen { .. } => "screen",
        Command::EnumerateChains { .. } => "enumerate-chains",
        Command::Encode { .. } => "encode",
        Command::Solve { .. } => "solve",
        Command::Repair { .. } => "repair",
        Command::Verify { .. } => "verify",
        Command::Select { .. } => "select",
        Command::Dataset(DatasetCommand::Generate { .. }) => "dataset generate",
        Command::Dataset(DatasetCommand::Label { .. }) => "dataset label",
        Command::Dataset(DatasetCommand::Render { .. }) => "dataset render",
        Command::Dataset(DatasetCommand::Stats { .. }) => "dataset stats",
        Command::BenchWarmstart(_) => "bench-warmstart",
        Command::Replay { .. } => "replay",
    }
}

fn io_paths(cli: &Cli) -> (Vec<PathBuf>, Vec<PathBuf>) {
    let mut inputs: Vec<PathBuf> = cli.global.warm_start.iter().cloned().collect();
    let mut outputs = Vec::new();
    match &cli.command {
        Command::GenGraph(_) => {}
        Command::Screen { instance } | Command::Solve { instance, .. } | Command::Repair { instance } => {
            inputs.push(instance.clone())
        }
        Command::EnumerateChains { input, .. } => inputs.push(input.clone()),
        Command::Encode { instance, dump } => {
            inputs.push(instance.clone());
            outputs.extend(dump.clone());
        }
        Command::Verify { instance, solution } => inputs.extend([instance.clone(), solution.clone()]),
        Command::Select { instance, candidates } => {
            inputs.push(instance.clone());
            inputs.extend(candidates.iter().cloned());
        }
        Command::Dataset(DatasetCommand::Generate { out, .. }) => outputs.extend(out.clone()),
        Command::Dataset(DatasetCommand::Label { instances }) => inputs.extend(instances.iter().cloned()),
        Command::Dataset(DatasetCommand::Render { instance, label }) => {
            inputs.extend([instance.clone(), label.clone()])
        }
        Command::Dataset(DatasetCommand::Stats { records }) => inputs.push(records.clone()),
        Command::BenchWarmstart(b) => outputs.extend(b.csv.clone()),
        Command::Replay { manifest } => inputs.push(manifest.clone()),
    }
    (inputs, outputs)
}
