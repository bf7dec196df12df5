//! Command-line and config-file settings.
//!
//! Every setting can come from a flag or from a JSON config file passed with
//! `--config`. Flags win over the file, the file wins over built-in
//! defaults. The file holds the global keys plus one optional section per
//! subcommand; unknown keys are rejected.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Csv,
    /// Edge-list text (`generate` and `rbfs` only).
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestMode {
    Query,
    Stream,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Random vertex and random neighbor queries.
    Neighbor,
    /// Random edge queries as well.
    NeighborEdge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleKind {
    Rbfs,
    Stream,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Monte Carlo checks of all bounds.
    Lemmas,
    /// Heavy-set size and degree bounds from exact reach values.
    LemmasExact,
    /// Exact stream-versus-BFS support comparison (small graphs).
    StreamExact,
    /// Sampled stream lower bound at a configured delta and cst.
    StreamMc,
}

/// Field-wise `Option::or`.
pub trait Merge: Sized {
    fn merge(self, lower: Self) -> Self;
}

macro_rules! merge_impl {
    ($t:ty { $($f:ident),* $(,)? }) => {
        impl Merge for $t {
            fn merge(self, lower: Self) -> Self {
                Self { $($f: self.$f.or(lower.$f)),* }
            }
        }
    };
}

#[derive(Debug, Parser)]
#[command(name = "discstream", version, about = "Bounded-disc exploration, canonical testers and stream emulation")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
pub struct Global {
    /// Master seed; per-trial seeds are derived from it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}
merge_impl!(Global { seed, threads, out, format });

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and print it as an edge list.
    Generate(GenerateArgs),
    /// Run one q-random BFS.
    Rbfs(RbfsArgs),
    /// Collect bounded discs around roots in one pass over an edge stream.
    Collect(CollectArgs),
    /// Run a tester over many trials.
    Test(TestArgs),
    /// Estimate reach probabilities.
    Estimate(EstimateArgs),
    /// Exact disc distributions of the BFS and the stream collector.
    Oracle(OracleArgs),
    /// Check the collision, degree, sharing and stream bounds.
    Verify(VerifyArgs),
    /// Exact theoretical constants.
    Params(ParamsArgs),
}

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenerateArgs {
    /// Generator spec, e.g. `path:6`, `er:1000:0.006`, `planted:star:10+path:6`.
    pub kind: Option<String>,
}
merge_impl!(GenerateArgs { kind });

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RbfsArgs {
    /// Edge-list file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Generator spec used instead of a file.
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long)]
    pub root: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
}
merge_impl!(RbfsArgs { graph, generator, root, q });

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CollectArgs {
    /// Stream file; its line order is the stream order.
    #[arg(long)]
    pub stream: Option<PathBuf>,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub generator: Option<String>,
    /// Seed of the random order (graph sources only).
    #[arg(long)]
    pub order_seed: Option<u64>,
    /// Comma-separated roots.
    #[arg(long, value_delimiter = ',')]
    pub roots: Option<Vec<u32>>,
    #[arg(long)]
    pub q: Option<u32>,
}
merge_impl!(CollectArgs { stream, graph, generator, order_seed, roots, q });

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TestArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub generator: Option<String>,
    /// `pk_free:K`, `d_bounded:D` or `st_disc:S,T[,L]`.
    #[arg(long)]
    pub property: Option<String>,
    /// Pattern file defining an explicit forbidden family (repeatable);
    /// used instead of `--property`.
    #[arg(long)]
    pub pattern: Option<Vec<PathBuf>>,
    #[arg(long, value_enum)]
    pub mode: Option<TestMode>,
    /// Oracle model of the query tester.
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Fix one stream order for every trial.
    #[arg(long)]
    pub order_seed: Option<u64>,
    /// Exploration bound; defaults to `amplification * q0`.
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub q0: Option<u32>,
    #[arg(long)]
    pub amplification: Option<u32>,
    /// Sampled roots of the streaming tester.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Streaming tester stores graphs with at most this many vertices whole.
    #[arg(long)]
    pub store_whole_below: Option<u64>,
}
merge_impl!(TestArgs {
    graph,
    generator,
    property,
    pattern,
    mode,
    model,
    order_seed,
    q,
    q0,
    amplification,
    samples,
    trials,
    epsilon,
    store_whole_below,
});

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EstimateArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// Also report the heavy set at this threshold.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Exact reach values instead of Monte Carlo.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub exact: Option<bool>,
}
merge_impl!(EstimateArgs { graph, generator, q, trials, alpha, exact });

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long)]
    pub root: Option<u32>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long, value_enum)]
    pub kind: Option<OracleKind>,
}
merge_impl!(OracleArgs { graph, generator, root, q, kind });

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub generator: Option<String>,
    #[arg(long, value_enum)]
    pub check: Option<Check>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    /// Sampled roots per repetition (`stream-mc`).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub cst: Option<f64>,
    #[arg(long)]
    pub repetitions: Option<u64>,
}
merge_impl!(VerifyArgs {
    graph,
    generator,
    check,
    q,
    alpha,
    trials,
    samples,
    delta,
    cst,
    repetitions,
});

#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsArgs {
    #[arg(long)]
    pub q: Option<u32>,
    /// Number of colored disc types; without it a crude upper bound is used.
    #[arg(long)]
    pub hq: Option<String>,
    /// Palette size for the crude bound.
    #[arg(long)]
    pub palette: Option<String>,
    /// Configured constant as `p/q` or an integer.
    #[arg(long)]
    pub cst: Option<String>,
}
merge_impl!(ParamsArgs { q, hq, palette, cst });

/// Contents of a `--config` file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub generate: GenerateArgs,
    pub rbfs: RbfsArgs,
    pub collect: CollectArgs,
    pub test: TestArgs,
    pub estimate: EstimateArgs,
    pub oracle: OracleArgs,
    pub verify: VerifyArgs,
    pub params: ParamsArgs,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text).map_err(|source| ConfigError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn global(&self) -> Global {
        Global {
            seed: self.seed,
            threads: self.threads,
            out: self.out.clone(),
            format: self.format,
        }
    }
}

/// Applies the config file (if any) underneath the command-line values.
pub fn resolve(cli: Cli) -> Result<(Global, Command), ConfigError> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let global = cli.global.merge(file.global());
    let command = match cli.command {
        Command::Generate(a) => Command::Generate(a.merge(file.generate)),
        Command::Rbfs(a) => Command::Rbfs(a.merge(file.rbfs)),
        Command::Collect(a) => Command::Collect(a.merge(file.collect)),
        Command::Test(a) => Command::Test(a.merge(file.test)),
        Command::Estimate(a) => Command::Estimate(a.merge(file.estimate)),
        Command::Oracle(a) => Command::Oracle(a.merge(file.oracle)),
        Command::Verify(a) => Command::Verify(a.merge(file.verify)),
        Command::Params(a) => Command::Params(a.merge(file.params)),
    };
    Ok((global, command))
}
